#!/usr/bin/env python3
"""Regenerates the bundled KB snapshot and registry files under data/.

The snapshot is a hand-designed core (animals, vehicles, food, transport,
introductions, sports equipment, redirects) padded with deterministic filler
entities so loading and indexing run at a realistic size. Everything is
deterministic: running this twice produces byte-identical files.
"""

import os

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, os.pardir, "data")

KB = "http://dbpedia.org/resource/"
CAT = "http://dbpedia.org/resource/Category:"
LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"
REDIR = "http://dbpedia.org/ontology/wikiPageRedirects"
SUBJECT = "http://purl.org/dc/terms/subject"
BROADER = "http://www.w3.org/2004/02/skos/core#broader"
WIKILINK = "http://dbpedia.org/ontology/wikiPageWikiLink"
INGREDIENT = "http://dbpedia.org/ontology/ingredient"
RANK = {r: "http://dbpedia.org/ontology/" + r
        for r in ("kingdom", "phylum", "class", "order", "family", "genus")}

triples = []


def t(s, p, o):
    triples.append(f"<{s}> <{p}> <{o}> .")


def lit(s, p, text, lang="en"):
    esc = text.replace("\\", "\\\\").replace('"', '\\"')
    tag = f"@{lang}" if lang else ""
    triples.append(f'<{s}> <{p}> "{esc}"{tag} .')


def entity(name, label, comment=None):
    e = KB + name
    lit(e, LABEL, label)
    if comment:
        lit(e, COMMENT, comment)
    return e


def category(name, label):
    c = CAT + name
    lit(c, LABEL, label)
    return c


# --- category tree -----------------------------------------------------
cat_animals = category("Animals", "Animal")
cat_mammals = category("Mammals", "Mammal")
cat_herbivores = category("Herbivorous_animals", "Herbivorous animal")
cat_domesticated = category("Domesticated_animals", "Domesticated animal")
cat_africa = category("Mammals_of_Africa", "Mammals of Africa")
cat_zebras = category("Zebras", "Zebras")
cat_equids = category("Equids", "Equid")
cat_giraffes = category("Giraffes", "Giraffes")
cat_ungulates = category("Even-toed_ungulates", "Even-toed ungulate")
cat_dogs = category("Dogs", "Dogs")

t(cat_mammals, BROADER, cat_animals)
t(cat_herbivores, BROADER, cat_animals)
t(cat_domesticated, BROADER, cat_animals)
t(cat_africa, BROADER, cat_mammals)
t(cat_zebras, BROADER, cat_equids)
t(cat_equids, BROADER, cat_mammals)
t(cat_giraffes, BROADER, cat_ungulates)
t(cat_ungulates, BROADER, cat_mammals)
t(cat_dogs, BROADER, cat_domesticated)

cat_vehicles = category("Vehicles", "Vehicle")
cat_road = category("Road_vehicles", "Road vehicle")
cat_autos = category("Automobiles", "Automobile")
cat_buses = category("Buses", "Buses")
cat_rail = category("Rail_vehicles", "Rail vehicle")
cat_aircraft = category("Aircraft", "Aircraft")
t(cat_road, BROADER, cat_vehicles)
t(cat_autos, BROADER, cat_road)
t(cat_buses, BROADER, cat_road)
t(cat_rail, BROADER, cat_vehicles)
t(cat_aircraft, BROADER, cat_vehicles)

cat_transport = category("Transport_infrastructure", "Transport infrastructure")
cat_rail_infra = category("Railway_infrastructure", "Railway infrastructure")
cat_air_infra = category("Airport_infrastructure", "Airport infrastructure")
t(cat_rail_infra, BROADER, cat_transport)
t(cat_air_infra, BROADER, cat_transport)

cat_sports_equipment = category("Sports_equipment", "Sports equipment")
cat_tennis_equipment = category("Tennis_equipment", "Tennis equipment")
t(cat_tennis_equipment, BROADER, cat_sports_equipment)

cat_1927 = category("1927_introductions", "1927 introductions")
cat_1948 = category("1948_introductions", "1948 introductions")
cat_1981 = category("1981_introductions", "1981 introductions")
cat_us_inventions = category("American_inventions", "American inventions")
cat_italian = category("Italian_cuisine", "Italian cuisine")
cat_people = category("People", "People")
cat_religion = category("Religion", "Religion")

# --- taxonomy value entities -------------------------------------------
animalia = entity("Animalia", "Animalia")
chordata = entity("Chordata", "Chordata")
mammalia = entity("Mammalia", "Mammalia")
perissodactyla = entity("Perissodactyla", "Perissodactyla")
artiodactyla = entity("Artiodactyla", "Artiodactyla")
carnivora = entity("Carnivora", "Carnivora")
equidae = entity("Equidae", "Equidae")
giraffidae = entity("Giraffidae", "Giraffidae")
canidae = entity("Canidae", "Canidae")
equus = entity("Equus", "Equus")
giraffa = entity("Giraffa", "Giraffa")
okapia = entity("Okapia", "Okapia")
canis = entity("Canis", "Canis")


def animal(name, label, cats, taxonomy, comment=None):
    e = entity(name, label, comment)
    for c in cats:
        t(e, SUBJECT, c)
    for rank, value in taxonomy.items():
        t(e, RANK[rank], value)
    return e


zebra = animal("Zebra", "Zebra",
               [cat_zebras, cat_africa, cat_herbivores],
               {"kingdom": animalia, "phylum": chordata, "class": mammalia,
                "order": perissodactyla, "family": equidae, "genus": equus},
               "Zebras are African equines with distinctive black-and-white "
               "striped coats.")
giraffe = animal("Giraffe", "Giraffe",
                 [cat_giraffes, cat_africa, cat_herbivores],
                 {"kingdom": animalia, "phylum": chordata, "class": mammalia,
                  "order": artiodactyla, "family": giraffidae, "genus": giraffa},
                 "The giraffe is an African even-toed ungulate mammal, the "
                 "tallest living terrestrial animal.")
horse = animal("Horse", "Horse", [cat_domesticated, cat_herbivores],
               {"kingdom": animalia, "phylum": chordata, "class": mammalia,
                "order": perissodactyla, "family": equidae, "genus": equus},
               "The horse is a domesticated one-toed hoofed mammal.")
donkey = animal("Donkey", "Donkey", [cat_domesticated],
                {"kingdom": animalia, "phylum": chordata, "class": mammalia,
                 "order": perissodactyla, "family": equidae, "genus": equus})
n_giraffe = animal("Northern_giraffe", "Northern giraffe", [cat_giraffes],
                   {"family": giraffidae, "genus": giraffa})
okapi = animal("Okapi", "Okapi", [cat_giraffes],
               {"kingdom": animalia, "family": giraffidae, "genus": okapia})
dog = animal("Dog", "Dog", [cat_dogs, cat_domesticated],
             {"kingdom": animalia, "phylum": chordata, "class": mammalia,
              "order": carnivora, "family": canidae, "genus": canis},
             "The dog is a domesticated descendant of the wolf.")

# --- vehicles -----------------------------------------------------------
car = entity("Car", "Car", "A car is a wheeled motor vehicle used for "
                           "transportation.")
t(car, SUBJECT, cat_autos)
bus = entity("Bus", "Bus")
t(bus, SUBJECT, cat_buses)
train = entity("Train", "Train")
t(train, SUBJECT, cat_rail)
airplane = entity("Airplane", "Airplane",
                  "An airplane is a fixed-wing aircraft propelled by engines.")
t(airplane, SUBJECT, cat_aircraft)
truck = entity("Truck", "Truck")
t(truck, SUBJECT, cat_autos)
bicycle = entity("Bicycle", "Bicycle")
t(bicycle, SUBJECT, cat_road)

# --- transport infrastructure -------------------------------------------
railway_station = entity("Railway_station", "Railway station",
                         "A railway station is a facility where trains stop to "
                         "load and unload passengers.")
t(railway_station, SUBJECT, cat_rail_infra)
airport = entity("Airport", "Airport",
                 "An airport is an aerodrome with facilities for commercial "
                 "air transport.")
t(airport, SUBJECT, cat_air_infra)

# --- kitchen / computer relatedness -------------------------------------
kitchen = entity("Kitchen", "Kitchen",
                 "A kitchen is a room used for cooking and food preparation.")
chef = entity("Chef", "Chef")
cooking = entity("Cooking", "Cooking")
restaurant = entity("Restaurant", "Restaurant")
computer = entity("Computer", "Computer",
                  "A computer is a machine that carries out sequences of "
                  "arithmetic or logical operations.")
programmer = entity("Programmer", "Programmer")
software = entity("Software", "Software")
office = entity("Office", "Office")

t(kitchen, WIKILINK, chef)
t(kitchen, WIKILINK, cooking)
t(cooking, WIKILINK, chef)
t(kitchen, WIKILINK, restaurant)
t(restaurant, WIKILINK, chef)
t(computer, WIKILINK, programmer)
t(computer, WIKILINK, software)
t(software, WIKILINK, programmer)
t(office, WIKILINK, programmer)

# --- zoo relatedness ----------------------------------------------------
zoo = entity("Zoo", "Zoo", "A zoo is a facility in which animals are kept and "
                           "displayed to the public.")
t(zoo, WIKILINK, giraffe)
t(zoo, WIKILINK, zebra)
t(zebra, WIKILINK, giraffe)
savanna = entity("Savanna", "Savanna")
t(savanna, WIKILINK, zebra)
t(savanna, WIKILINK, giraffe)
park = entity("Park", "Park")
t(park, WIKILINK, dog)

# --- redirects (synonyms, abbreviations, misspellings) -------------------
religion = entity("Religion", "Religion",
                  "Religion is a range of social-cultural systems of "
                  "designated behaviors and practices.")
relig = KB + "Relig."
lit(relig, LABEL, "Relig.")
t(relig, REDIR, religion)

flying_disc = entity("Flying_disc", "Flying disc",
                     "A flying disc is a gliding toy or sporting item thrown "
                     "and caught for recreation or sport.")
t(flying_disc, SUBJECT, cat_1948)
t(flying_disc, SUBJECT, cat_us_inventions)
frisbee = KB + "Frisbee"
lit(frisbee, LABEL, "Frisbee")
t(frisbee, REDIR, flying_disc)

television = entity("Television", "Television",
                    "Television is a telecommunication medium for "
                    "transmitting moving images and sound.")
t(television, SUBJECT, cat_1927)
t(television, SUBJECT, cat_us_inventions)
tv = KB + "Tv"
lit(tv, LABEL, "Tv")
t(tv, REDIR, television)
kool_aid = entity("Kool-Aid", "Kool-Aid")
t(kool_aid, SUBJECT, cat_1927)

laptop = entity("Laptop", "Laptop",
                "A laptop is a small portable personal computer.")
t(laptop, SUBJECT, cat_1981)

# --- food ----------------------------------------------------------------
pizza = entity("Pizza", "Pizza",
               "Pizza is an Italian dish consisting of a flattened disc of "
               "bread dough topped with various ingredients.")
t(pizza, SUBJECT, cat_italian)
tomato = entity("Tomato", "Tomato")
cheese = entity("Cheese", "Cheese")
dough = entity("Dough", "Dough")
t(pizza, INGREDIENT, tomato)
t(pizza, INGREDIENT, cheese)
t(pizza, INGREDIENT, dough)
hot_dog = entity("Hot_dog", "Hot dog")
sausage = entity("Sausage", "Sausage")
bread_roll = entity("Bun", "Bun")
t(hot_dog, INGREDIENT, sausage)
t(hot_dog, INGREDIENT, bread_roll)

# --- sports equipment -----------------------------------------------------
tennis = entity("Tennis", "Tennis",
                "Tennis is a racket sport played individually or between two "
                "teams of two players each.")
tennis_racket = entity("Tennis_racket", "Tennis racket")
tennis_ball = entity("Tennis_ball", "Tennis ball")
t(tennis_racket, SUBJECT, cat_tennis_equipment)
t(tennis_ball, SUBJECT, cat_tennis_equipment)
t(tennis, WIKILINK, tennis_racket)
t(tennis, WIKILINK, tennis_ball)

# --- misc objects used by annotations -------------------------------------
person = entity("Person", "Person")
t(person, SUBJECT, cat_people)
for name, label in [("Knife", "Knife"), ("Bottle", "Bottle"),
                    ("Keyboard", "Keyboard"), ("Traffic_light", "Traffic light"),
                    ("Dining_table", "Dining table"), ("Monitor", "Monitor")]:
    entity(name, label)

core_count = len(triples)

# --- deterministic filler --------------------------------------------------
N_SPECIMENS = 1450
N_GROUPS = 60
N_CLUSTERS = 12

for j in range(N_CLUSTERS):
    category(f"Cluster_{j}", f"Cluster {j}")
for j in range(N_GROUPS):
    c = category(f"Group_{j}", f"Group {j}")
    t(c, BROADER, CAT + f"Cluster_{j % N_CLUSTERS}")

for i in range(N_SPECIMENS):
    e = entity(f"Specimen_{i:04d}", f"Specimen {i:04d}")
    t(e, SUBJECT, CAT + f"Group_{i % N_GROUPS}")
    t(e, WIKILINK, KB + f"Specimen_{(i * 7 + 3) % N_SPECIMENS:04d}")
    if i % 4 == 0:
        lit(e, COMMENT, f"Specimen {i:04d} is a synthetic filler entity.")
    if i % 40 == 0:
        alias = KB + f"Specimen_{i:04d}_alias"
        lit(alias, LABEL, f"Specimen {i:04d} alias")
        t(alias, REDIR, e)

os.makedirs(DATA, exist_ok=True)
with open(os.path.join(DATA, "mini_kb.nt"), "w") as f:
    f.write("# bundled KB snapshot (regenerate with tools/make_fixtures.py)\n")
    f.write("\n".join(triples) + "\n")
print(f"mini_kb.nt: {len(triples)} triples ({core_count} core)")

# --- registries -------------------------------------------------------------
CLASSES = {
    "person": ["person"],
    "vehicle": ["bicycle", "car", "motorcycle", "airplane", "bus", "train",
                "truck", "boat", "cart", "snowmobile", "snowplow", "unicycle"],
    "outdoor": ["traffic light", "fire hydrant", "stop sign", "parking meter",
                "bench"],
    "animal": ["cat", "dog", "horse", "sheep", "cow", "elephant", "bear",
               "zebra", "giraffe", "ant", "antelope", "armadillo", "bee",
               "butterfly", "camel", "centipede", "dragonfly", "fox", "frog",
               "giant panda", "goldfish", "hamster", "hippopotamus", "isopod",
               "jellyfish", "koala bear", "ladybug", "lion", "lizard",
               "lobster", "monkey", "otter", "porcupine", "rabbit", "ray",
               "red panda", "scorpion", "seal", "skunk", "snail", "snake",
               "squirrel", "starfish", "swine", "tick", "tiger", "turtle",
               "whale"],
    "accessory": ["backpack", "umbrella", "handbag", "tie", "suitcase",
                  "band aid", "bathing cap", "crutch", "diaper", "face powder",
                  "hat with awide brim", "helmet", "maillot", "miniskirt",
                  "neck brace", "plastic bag", "stethoscope",
                  "swimming trunks"],
    "sports": ["frisbee", "skis", "snowboard", "kite", "baseball bat",
               "baseball glove", "skateboard", "surfboard", "tennis racket",
               "balance beam", "baseball", "basketball", "croquet ball",
               "golf ball", "golfcart", "horizontal bar", "punching bag",
               "racket", "rugby ball", "soccer ball", "tennis ball",
               "volleyball"],
    "kitchen": ["bottle", "wine glass", "cup", "fork", "knife", "spoon",
                "bowl", "beaker", "can opener", "cocktail shaker", "corkscrew",
                "frying pan", "ladle", "milk can", "pitcher", "plate rack",
                "salt or pepper shaker", "spatula", "strainer", "water bottle"],
    "food": ["banana", "apple", "sandwich", "orange", "broccoli", "carrot",
             "hot dog", "pizza", "donut", "cake", "artichoke", "bagel",
             "bell pepper", "burrito", "cream", "cucumber", "fig", "guacamole",
             "hamburger", "head cabbage", "lemon", "mushroom", "pineapple",
             "pomegranate", "popsicle", "pretzel", "strawberry"],
    "furniture": ["chair", "couch", "potted plant", "bed", "dining table",
                  "toilet", "baby bed", "filing cabinet"],
    "electronic": ["tv", "laptop", "mouse", "remote", "keyboard", "cell phone",
                   "iPod"],
    "appliance": ["microwave", "oven", "toaster", "sink", "refrigerator",
                  "coffee maker", "dishwasher", "electric fan", "printer",
                  "stove", "tape player", "vacuum", "waffle iron", "washer"],
    "indoor": ["clock", "vase", "scissors", "teddy bear", "hair drier",
               "toothbrush", "binder", "bookshelf", "digital clock",
               "hair spray", "lamp", "lipstick", "pencil box",
               "pencil sharpener", "perfume", "rubber eraser", "ruler",
               "soap dispenser"],
    "music": ["accordion", "banjo", "cello", "chime", "drum", "flute",
              "french horn", "guitar", "harmonica", "harp", "oboe", "piano",
              "saxophone", "trombone", "trumpet", "violin"],
    "tool": ["axe", "bow", "chain saw", "hammer", "power drill", "screwdriver",
             "stretcher", "syringe"],
}

ATTRIBUTES = {
    "action": ["playing", "sitting", "standing", "swinging", "catching",
               "cutting", "dining", "driving", "eating", "flying", "hitting",
               "jumping", "laying", "racing", "reads", "swimming", "running",
               "sleeping", "smiling", "taking", "talking", "walking",
               "wearing", "wedding"],
    "sport": ["surfing", "tennis", "baseball", "skateboard"],
    "scene": ["mountain", "road", "snow", "airport", "bathroom", "beach",
              "bedroom", "city", "court", "forest", "hill", "island",
              "kitchen", "lake", "market", "ocean", "office", "park", "river",
              "room", "sea", "sky", "restaurant", "field", "zoo"],
    "object": ["children", "bottle", "computer", "drink", "glass", "monitor",
               "tree", "wood", "basket", "bathtub", "beer", "blanket", "box",
               "bread", "bridge", "buildings", "cabinets", "camera", "candles",
               "cheese", "chicken", "chocolate", "church", "clouds", "coat",
               "coffee", "decker", "desk", "dishes", "door", "face", "fence",
               "fish", "flag", "flowers", "foods", "fruits", "furniture",
               "grass", "hair", "hands", "head", "helmet", "hotdog", "house",
               "ice", "jacket", "kitten", "lettuce", "lights", "luggage",
               "meat", "metal", "mouth", "onions", "palm", "pants", "papers",
               "pen", "pillows", "plants", "plates", "players", "police",
               "potatoes", "racquet", "railing", "rain", "rocks", "salad",
               "sand", "seat", "shelf", "ship", "shirt", "shorts", "shower",
               "sofa", "station", "stone", "suit", "sunglasses", "toddler",
               "tomatoes", "towel", "tower", "toys", "tracks", "vegetables",
               "vehicles", "wall", "water", "wii", "windows", "wine"],
}


def write_registry(path, table):
    rows = []
    for supercat, labels in table.items():
        for label in labels:
            rows.append(f"{label}\t{supercat}")
    with open(path, "w") as f:
        f.write("# label<TAB>supercategory\n")
        f.write("\n".join(rows) + "\n")
    return len(rows)


n = write_registry(os.path.join(DATA, "classes.tsv"), CLASSES)
print(f"classes.tsv: {n} classes")
n = write_registry(os.path.join(DATA, "attributes.tsv"), ATTRIBUTES)
print(f"attributes.tsv: {n} attributes")
