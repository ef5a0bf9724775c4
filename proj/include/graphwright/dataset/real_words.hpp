#pragma once

#include <algorithm>
#include <array>
#include <string_view>

namespace graphwright {

/// Real place names and common words a generated node name must not equal
/// (lower case). Also lists the capitalised words that open template
/// sentences.
inline constexpr std::array<std::string_view, 373> real_words{
    "abuja",    "accra",    "adelaide", "africa",   "alabama",  "alaska",   "albania",  "algeria",  "almaty",
    "amman",    "amsterdam", "andorra", "angola",   "ankara",   "antigua",  "arizona",  "armenia",  "aruba",
    "asmara",   "athens",   "atlanta",  "austin",   "bahamas",  "bamako",   "banana",   "bangkok",  "bangui",
    "banjul",   "barbados", "basket",   "beirut",   "belize",   "benin",    "berlin",   "bermuda",  "bhutan",
    "bishkek",  "bogota",   "bolivia",  "bonsai",   "boston",   "botswana", "brasilia", "bristol",  "brunei",
    "budapest", "burundi",  "butter",   "cabana",   "cairo",    "calgary",  "camera",   "canada",   "canal",
    "canary",   "candle",   "canoe",    "caracas",  "carpet",   "castle",   "cinema",   "colony",   "colorado",
    "comoros",  "corona",   "cuba",     "cyprus",   "dakar",    "dakota",   "dallas",   "denmark",  "denver",
    "detroit",  "dhaka",    "dili",     "dinner",   "divide",   "dodoma",   "doha",     "domino",   "donate",
    "dublin",   "dushanbe", "ecuador",  "edinburgh", "egypt",   "eritrea",  "estonia",  "finland",  "florida",
    "france",   "gabon",    "galaxy",   "gambia",   "garden",   "geneva",   "genoa",    "georgia",  "ghana",
    "granada",  "grenada",  "guinea",   "guyana",   "habana",   "haiti",    "hamburg",  "hanoi",    "harare",
    "havana",   "hawaii",   "helsinki", "honolulu", "houston",  "idaho",    "india",    "indiana",  "iowa",
    "italy",    "jakarta",  "jamaica",  "japan",    "jordan",   "juba",     "kabul",    "kampala",  "kansas",
    "kenya",    "khartoum", "kigali",   "kinshasa", "kosovo",   "kuwait",   "kyoto",    "lagos",    "latvia",
    "lebanon",  "lemon",    "lesotho",  "liberia",  "libya",    "lima",     "limerick", "lisbon",   "lobby",
    "london",   "lusaka",   "madagascar", "madrid", "maine",    "majuro",   "malabo",   "malawi",   "malaysia",
    "maldives", "male",     "mali",     "malta",    "managua",  "manama",   "manila",   "maputo",   "maseru",
    "medina",   "melody",   "melon",    "memory",   "mexico",   "miami",    "milano",   "minute",   "moldova",
    "monaco",   "monday",   "mongolia", "montana",  "moroni",   "morocco",  "moscow",   "munich",   "muscat",
    "nagoya",   "nairobi",  "namibia",  "naples",   "nassau",   "nauru",    "nevada",   "niamey",   "nicosia",
    "niger",    "nigeria",  "norway",   "number",   "oklahoma", "omaha",    "ontario",  "oregon",   "osaka",
    "oslo",     "ottawa",   "pacific",  "palau",    "palermo",  "panama",   "paper",    "paris",    "pepper",
    "peru",     "petal",    "piano",    "pilot",    "planet",   "poland",   "polka",    "potato",   "prague",
    "pretoria", "quito",    "rabat",    "radio",    "regina",   "riga",     "river",    "riyadh",   "romania",
    "rome",     "rotterdam", "russia",  "rwanda",   "sahara",   "salad",    "salami",   "salon",    "samoa",
    "santiago", "sarajevo", "savanna",  "senegal",  "seoul",    "serbia",   "sevilla",  "silver",   "simple",
    "sofia",    "somalia",  "sonata",   "spain",    "sudan",    "sunday",   "sweden",   "sydney",   "taipei",
    "tallinn",  "tamale",   "tarawa",   "tashkent", "tbilisi",  "tehran",   "texas",    "thimphu",  "timber",
    "tirana",   "tobago",   "togo",     "tokyo",    "tomato",   "tonga",    "toronto",  "tornado",  "tunis",
    "tunisia",  "turkey",   "tuvalu",   "uganda",   "ukraine",  "utah",     "valencia", "valletta", "vanilla",
    "vanuatu",  "venice",   "verona",   "victoria", "vienna",   "vilnius",  "virginia", "volcano",  "wales",
    "warsaw",   "water",    "winter",   "yemen",    "yerevan",  "zambia",   "zimbabwe", "zagreb",   "zurich",
    // sentence openers used by the text templates
    "there",    "these",    "those",    "their",    "after",    "about",    "again",    "along",    "among",
    "before",   "between",  "daily",    "drivers",  "during",   "every",    "ignore",   "later",    "local",
    "maybe",    "nobody",   "other",    "people",   "rumour",   "since",    "staff",    "still",    "taking",
    "through",  "today",    "under",    "until",    "visitors", "walking",  "while",    "whether",  "without",
    "travelling", "driving", "engineers", "signals", "someone", "somebody", "notes",   "plan",     "select",
    "assign",   "choose",   "decide",   "answer",   "cables",   "crews",    "guide",    "give",     "list",
    "route",    "ropes",    "nodes",    "graph",    "format",   "yesterday", "tomorrow", "weekly",  "nearly",
    "almost",   "never",    "often",    "below",    "above",    "order",    "plaza",    "market",   "depot",
    "tower",    "router",   "outpost",  "station"};

inline bool is_real_word(std::string_view lower_case) {
  return std::find(real_words.begin(), real_words.end(), lower_case) != real_words.end();
}

}  // namespace graphwright
