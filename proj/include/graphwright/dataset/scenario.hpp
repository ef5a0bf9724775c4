#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "graphwright/solvers/solution.hpp"

namespace graphwright {

enum class Scenario { delivery_logistics, wireless_channel, network_monitoring, target_navigation, generic };

inline constexpr std::array<Scenario, 5> all_scenarios{Scenario::delivery_logistics, Scenario::wireless_channel,
                                                       Scenario::network_monitoring, Scenario::target_navigation,
                                                       Scenario::generic};

constexpr std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::delivery_logistics: return "delivery_logistics";
    case Scenario::wireless_channel: return "wireless_channel";
    case Scenario::network_monitoring: return "network_monitoring";
    case Scenario::target_navigation: return "target_navigation";
    case Scenario::generic: return "generic";
  }
  return "generic";
}

inline std::optional<Scenario> parse_scenario(std::string_view s) {
  for (auto sc : all_scenarios)
    if (to_string(sc) == s) return sc;
  return std::nullopt;
}

/// The real-world framing each problem family is dressed in.
constexpr Scenario default_scenario(ProblemType t) noexcept {
  switch (t) {
    case ProblemType::tsp: return Scenario::delivery_logistics;
    case ProblemType::coloring: return Scenario::wireless_channel;
    case ProblemType::vertex_cover: return Scenario::network_monitoring;
    case ProblemType::shortest_path: return Scenario::target_navigation;
    case ProblemType::cycle: return Scenario::generic;
  }
  return Scenario::generic;
}

/// Text material for one scenario. Edge templates use {a}, {b} and {w};
/// distractors use {a} and {num}. Nothing here may contain a digit.
struct ScenarioText {
  std::string_view noun;        // one node
  std::string_view nouns;       // several nodes
  std::string_view link;        // one edge
  std::string_view measure;     // what a weight measures
  std::vector<std::string_view> framing;
  std::vector<std::string_view> heavy_framing;
  std::string_view roster;      // "{nouns} involved are: ..." opener
  std::vector<std::string_view> place_nouns;
  std::vector<std::string_view> adjectives;
  std::vector<std::string_view> clauses;
  std::vector<std::string_view> weighted;
  std::vector<std::string_view> unweighted;
  std::vector<std::string_view> distractors;
};

/// Directed graphs (imports only) use these regardless of scenario.
inline const std::vector<std::string_view> directed_weighted_templates{
    "There is a one-way connection from {a} to {b} with weight {w}."};
inline const std::vector<std::string_view> directed_unweighted_templates{"There is a one-way connection from {a} to {b}."};

/// Red herrings shared by every scenario; each flags its number as irrelevant.
inline const std::vector<std::string_view> common_distractors{
    "A sign near {a} shows the number {num}, but it is left over from an old survey and means nothing here.",
    "Someone once counted {num} pigeons around {a}; that count has no bearing on the task.",
    "The weather around {a} was mild all week.",
    "Rumour has it that {a} will be repainted in a brighter colour next spring.",
    "Nobody remembers who first named {a}, and it does not matter for this problem.",
    "An old brochure lists {num} as the founding year of {a}, which is irrelevant to the question.",
    "Visitors often say that {a} feels calmer in the early evening.",
    "The caretaker at {a} keeps a notebook with {num} pages of doodles, none of them relevant.",
};

inline const ScenarioText& scenario_text(Scenario s) {
  static const ScenarioText delivery{
      "stop", "stops", "road", "distance",
      {"A small courier firm is planning tomorrow's delivery round.",
       "Its only van must call at every stop listed below and then return to where it began."},
      {"The dispatcher pasted in notes from several drivers, and not all of them are useful.",
       "Fuel prices, parking habits and local gossip turn up throughout."},
      "The stops on the round are",
      {"depot", "warehouse", "market square", "bakery", "loading dock", "corner shop", "distribution hub", "plaza",
       "pharmacy", "bookshop", "flower stall", "print works"},
      {"bustling", "quiet", "sprawling", "narrow", "sunlit", "weathered", "modern", "crowded", "tidy", "cobbled"},
      {"surrounded by cafes, boutiques and street performers", "known for its early morning deliveries",
       "tucked behind a row of old lanterns", "with a striped awning over the entrance",
       "where vans queue before sunrise", "next to a small fountain", "that smells of fresh bread",
       "run by a family for generations"},
      {"The road from {a} to {b} is {w} km long.", "{a} and {b} are {w} km apart by road.",
       "Driving between {a} and {b} covers {w} km."},
      {"A road joins {a} and {b}.", "Vans can drive directly between {a} and {b}."},
      {"Drivers at {a} swear the coffee there is the best in town.",
       "The van was last serviced {num} days ago, which does not change the plan.",
       "Parking near {a} is tight on weekdays but that does not affect the distances."}};
  static const ScenarioText wireless{
      "tower", "towers", "interference pair", "cost",
      {"A regional operator is assigning radio channels to its transmitter towers.",
       "Towers that interfere with each other must not share a channel, and channels are expensive."},
      {"The field engineers' report is long and rambling.",
       "Antenna colours, crew schedules and paint orders are mixed in with the facts that matter."},
      "The towers involved are",
      {"transmitter tower", "relay mast", "rooftop antenna", "base station", "repeater", "signal beacon",
       "lattice mast", "hilltop aerial"},
      {"tall", "rusty", "freshly painted", "slender", "humming", "lonely", "sturdy", "windswept"},
      {"perched above the harbour", "overlooking a field of sunflowers", "guarded by a grumpy goat",
       "visible from the motorway", "wrapped in blinking lights", "beside an abandoned mill"},
      {"The link between {a} and {b} has a cost of {w}.", "Interference between {a} and {b} is rated {w}."},
      {"{a} and {b} are close enough to interfere.", "The signals of {a} and {b} overlap.",
       "{a} interferes with {b}."},
      {"Engineers painted {a} a pale shade of green.",
       "Crews at {a} logged {num} cups of tea during the last inspection, which is beside the point.",
       "Birds nest on {a} every spring, though they cause no interference."}};
  static const ScenarioText monitoring{
      "device", "devices", "cable", "cost",
      {"A company wants to watch every cable in its network.",
       "A monitor placed on a device observes every cable attached to it, and monitors are costly."},
      {"The inventory sheet was written by three different administrators.",
       "Rack colours, warranty notes and office jokes appear between the useful lines."},
      "The monitored devices are",
      {"server room", "router cabinet", "core switch", "data hall", "gateway", "sensor hub", "edge router",
       "storage array"},
      {"noisy", "chilly", "dusty", "brand new", "overheating", "carefully labelled", "cramped", "well lit"},
      {"behind a door with a broken lock", "next to the staff kitchen", "humming under the stairs",
       "cooled by an ancient fan", "covered in colourful stickers", "at the end of a long corridor"},
      {"The cable between {a} and {b} costs {w} to watch.", "Watching the link from {a} to {b} is rated {w}."},
      {"A cable connects {a} and {b}.", "{a} is wired directly to {b}.",
       "There is a network link between {a} and {b}."},
      {"The rack holding {a} was moved last month, with no change to the wiring.",
       "An administrator once rebooted {a} {num} times in one night; that story is irrelevant.",
       "Someone left a plant on top of {a}."}};
  static const ScenarioText navigation{
      "waypoint", "waypoints", "trail", "travel time",
      {"A search team must move across rough country to reach its target.",
       "Trails between waypoints take different amounts of time to walk."},
      {"The briefing was assembled from radio chatter and hand-written maps.",
       "Weather remarks, supply lists and old stories are scattered among the trail notes."},
      "The waypoints are",
      {"checkpoint", "watchtower", "clearing", "ridge", "outpost", "river crossing", "cairn", "old bridge"},
      {"misty", "windswept", "shaded", "rocky", "overgrown", "remote", "sunny", "muddy"},
      {"marked by a pile of painted stones", "where hawks circle at noon", "beside a collapsed shepherd's hut",
       "with a view across the valley", "hidden among tall pines", "known for its echo"},
      {"Walking from {a} to {b} takes {w} minutes.", "The trail between {a} and {b} is {w} minutes long.",
       "{a} and {b} are {w} minutes apart on foot."},
      {"A trail links {a} and {b}.", "One can walk straight from {a} to {b}."},
      {"The team carried {num} spare batteries past {a}, which does not affect the route.",
       "Fog often settles over {a} in the morning.", "A lost glove was found near {a}."}};
  static const ScenarioText generic{
      "node", "nodes", "connection", "weight",
      {"Consider the following network of named points.", "Some pairs of points are connected."},
      {"The description below mixes the connections with unrelated remarks."},
      "The nodes are",
      {"site", "station", "landmark", "hub", "junction", "point of interest"},
      {"small", "large", "busy", "silent", "famous", "forgotten"},
      {"painted in bright colours", "surrounded by tall grass", "with a red door", "known to very few people"},
      {"The edge between {a} and {b} has weight {w}.", "{a} and {b} are joined with weight {w}."},
      {"{a} is connected to {b}.", "There is a connection between {a} and {b}."},
      {"A poet once wrote about {a}.", "The label on {a} mentions {num}, which is unrelated to the connections."}};
  switch (s) {
    case Scenario::delivery_logistics: return delivery;
    case Scenario::wireless_channel: return wireless;
    case Scenario::network_monitoring: return monitoring;
    case Scenario::target_navigation: return navigation;
    case Scenario::generic: return generic;
  }
  return generic;
}

}  // namespace graphwright
