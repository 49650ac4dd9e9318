#!/usr/bin/env python3
"""Regenerates data/lexicon.tsv from the word lists below and data/irregular.tsv.

Usage: python3 tools/gen_lexicon.py > data/lexicon.tsv
"""

import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
IRREGULAR = os.path.join(HERE, "..", "data", "irregular.tsv")

NOUNS = """
ability accident account achievement act action activity actor address adult advantage adventure advice
afternoon age agreement air airport album amount animal answer apartment apple appointment area argument
arm army art article artist aspect assignment atmosphere attempt attention audience aunt author autumn
baby back bag ball band bank bar base basket bath battle beach bear bed bedroom beer beginning behavior
belief bell bike bill bird birthday bit blood board boat body bone book border boss bottle bottom box boy
brain branch bread breakfast bridge brother budget building bus business butter button cake camera camp
campaign cancer candidate capital car card care career case cash castle cat cause ceiling cell center
century chair challenge championship chance change chapter character charge cheese chicken chocolate
choice church cinema circle citizen city class classroom climate clock clothes cloud club coach coast
coat coffee coin college color comment community company competition computer concert condition
conference connection contract conversation cook corner cost country couple course cousin culture cup
customer dad damage dance danger data date daughter day deal death debate decision degree department
desk detail diet difference dinner direction director disease doctor document dog door dream dress
drink driver ear earth economy edge education effect effort egg election email employee end enemy
energy engine engineer environment error evening event exam example exercise experience experiment
expert eye face fact factory family fan farm farmer father fear feeling festival field film finger
fire fish flight floor flower food football forest form friend friendship fruit fun future game garden
gate gift girl glass goal god government grade grammar grandfather grandmother group guest guide guitar
gun hair half hall hand hat head health heart heat hill history hobby holiday home homework hope horse
hospital hotel hour house husband idea illness image importance improvement income industry
information injury insect instrument interest internet interview island issue item jacket job joke
journey judge juice key kid kind king kitchen knowledge lady lake land language laptop law lawyer
leader lesson letter level library light line list literature lot love luck lunch machine magazine
manager map market marriage match material matter meal meaning meat medicine meeting member memory
message method middle milk mind minute mirror mistake model moment money month morning mother mountain
mouth movie mum music name nation nature neck neighbor network news newspaper night noise nose note
novel number object ocean office officer oil opinion opportunity option orange order owner page pain
painting paper parent park part partner party passenger past patient pattern peace pen pencil phone
photo piano picture piece place plan plane plant plate player pocket poem point police policy politics
pool population position power practice present president price problem process product program
project property purpose quality question race radio rain reason record region relationship report
research respect rest restaurant result river road rock role room rule safety salary salt sand school
science screen sea season seat second secret section sense sentence series service shape share shirt
shoe shop shopping side sign singer sister site situation size skill skin sky sleep smile snow soccer
society software soldier son song sound soup source space speaker speech sport spring staff stage star
start state station step stomach stone store story street strength student study style subject success
sugar summer sun supermarket support surface surprise system table talent task taste tax tea teacher
team technology telephone television temperature tennis term test text theory thing ticket time title
toilet tomorrow tool top topic town toy track tradition traffic train training travel tree trip
trouble truth type uncle university vacation valley value vegetable version video view village visit
voice volume walk wall war watch water way weather website wedding week weekend weight window wine
winter wish word work worker world writer year youth
absence academy accent accommodation actress addition administration advertisement agency agenda ambulance
analysis ancestor angle ankle anniversary announcement anxiety apology appearance appetite application
approach architect architecture arrival assistant athlete attic attitude audition avenue award balance
balcony balloon banana bandage barber bargain basement battery beard beauty bee behaviour bench benefit
beverage bicycle biology biscuit blanket blouse boot boyfriend bracelet brand breath brick bride brush
bucket bug burger butterfly cabbage cabin cable cafe calendar camel candle candy canteen cap captain carpet
carrot cartoon cathedral ceremony champion channel chef chemistry chest childhood chin choir citizen
clerk cliff client clinic coach cockroach colleague comedy comfort committee complaint concept confidence
confusion consequence construction contest context convenience cookie corn costume cottage cotton
courage court cow crab crew crime criticism crowd crown cupboard curtain cushion custom cycle dentist
departure deposit desert dessert destination diamond dictionary dinosaur diploma disaster discount
discussion dish distance dormitory dot download drawer drawing duck dust duty eagle earthquake elbow
elephant elevator embassy emergency emotion emperor employer encyclopedia enthusiasm entrance envelope
equipment essay evidence exhibition exit expedition explanation expression fabric failure fairy fame
fashion feather fee fence ferry fever fiction fireworks flag flat flavor flood flu fog folk fork fortune
fountain fox freedom fridge frog furniture gallery gap garage garbage generation ghost giant giraffe
glove glue goat gold golf gossip graduation grape grass gym habit hairdresser hammer handbag happiness
harbor headache heater helicopter hero highway hike hint holiday honey honor horror host household hunger
hut ice identity ignorance imagination impression incident independence inflation ingredient ink inn
insurance intelligence invention invitation iron jam jar jeans jewelry journalist jungle kangaroo kettle
kindness kingdom kite knee knife label laboratory ladder lamp landscape laughter laundry lecture leg
lemon licence lift lion lip liquid living loan lock locker loss luggage mail maths mayor meadow medal
melody menu mess microwave midnight minister mission mobile monkey monument mood moon motorbike mouse
mud muscle museum mushroom mystery nail necklace needle nephew nest niece noodle notebook nurse nut
occasion onion orchestra outfit oven owl pack package palace pan panda parade parcel parking passport
pasta path patience pea peach pear penguin pepper performance perfume permission pet pharmacy
philosophy photographer physics pie pig pillow pilot pizza planet plastic platform playground pleasure
plot poet poetry pollution pond portrait postcard poster pot potato poverty prayer pride priest prince
princess prison prize profession professor profit promise proof protest pub pumpkin punishment puppy
puzzle pyramid queen queue rabbit railway rainbow receipt recipe refrigerator relative religion rent
reputation reservation resident resource revolution reward rice ring robot roof root rope rose routine
rubbish rug sailor salad sandwich satisfaction sauce sausage scarf scene schedule scholarship scientist
scissors score sculpture seed semester shadow sheep shelf shell shelter ship shock shower silence silk
silver sink skirt slice smell smoke snack snake sock sofa solution spider spoon square stadium stair
stamp statue steak stick stranger strawberry stream stress sunset sweater symbol tablet tail tape
target taxi tear temple tent terrorist textbook theater thief thunder tiger toast toe tomato tongue
tooth toothbrush tour tourist towel tower tragedy trash treasure trend tribe truck trumpet tunnel
turtle twin umbrella uniform universe vase vehicle victim victory violin visitor vocabulary volunteer
waiter waitress wallet wave wealth weapon whale wheel wife wind wing wolf wood wool workshop wound yard
zoo monday tuesday wednesday thursday friday saturday sunday
"""

# Nouns without a plural entry; a regular plural of these reads as a nonword.
UNCOUNTABLE = set("advice bread butter cash education energy equipment furniture health homework information "
                  "knowledge luck milk music news research safety salt sand snow soccer software tennis traffic "
                  "weather football rain sugar juice tea coffee water money fun grammar literature luggage rubbish "
                  "vocabulary patience courage happiness honesty pollution poverty laughter jewelry".split())

VERBS = """
accept achieve add admit agree allow answer appear apply arrive ask attend avoid bake become believe
belong borrow brush call carry change chat check clean climb close collect compare complain complete
contain continue cook copy correct cost cough count cover cry dance decide deliver depend describe
design destroy develop die discover discuss dislike divide dress earn end enjoy enter escape examine
exist expect experience explain fail fill finish fix follow gain greet guess hate help hope hurry
identify ignore imagine improve include increase intend introduce invite join jump kick kill kiss
laugh learn like listen live look love manage marry matter mention miss move need notice obtain offer
open order own paint pass pick place plan plant play practice prefer prepare present pretend prevent
print produce promise protect prove provide pull push question rain reach realize receive recommend
reduce refuse relax remember remove repeat reply report request require rest return save serve share
shop shout sign smell smile snow solve sound start stay stop study succeed suffer suggest support
suppose surprise talk taste thank touch train travel try turn type use visit vote wait walk want warn
wash waste watch wish wonder work worry
adapt adjust admire adopt advertise advise afford aim announce annoy apologize appreciate approve argue
arrange arrest attack attract bark bathe beg behave blame bless boil bother bounce bow breathe brush
bump calculate camp cancel celebrate chase cheat cheer chew clap coach comb comfort communicate compete
concentrate confess confirm confuse connect consider consist contact convince crash crawl create cross
cycle damage decorate defend delay delight deny deserve disagree disappear disappoint dive donate doubt
download drag dream drop dry educate embarrass employ encourage entertain establish estimate excite
excuse exercise explore export express fancy fasten fetch film float flood flow fold form frighten fry
gather gaze glow graduate grab guarantee guard handle hang harm heal hike hug hunt hurry imitate impress
inform injure insist inspire install interrupt invent irritate iron jog joke judge kneel knit knock land
last launch lick lift limit link load lock mark measure melt memorize mix murder nod obey object observe
occur offend operate organize overcome pack park participate pause perform persuade phone pinch point
polish pollute pour pray preach predict pretend print proceed pronounce propose publish punch punish
race raise rank recognize recover recycle reflect regret reject release rely rent repair replace rescue
research reserve resist respect respond retire review rob rock rub ruin rush sail satisfy scare scream
search select settle shave shiver skate ski skip slip smash smoke sneeze sniff spell spill spoil spray
squeeze stamp stare steer step stir store stretch struggle submit suit supply surround survive suspect
swap switch tap tease tempt thank tick tie tip tour trade translate transport trap treat tremble trust
tumble twist unite unlock unpack upload upset vanish volunteer wander warm wave weigh whisper whistle
wink wipe wrap yawn yell zip
"""

DOUBLING = set("plan stop prefer shop chat drop admit ship rob beg hug jog plan nod occur permit refer "
               "regret commit control submit travel rub skip slip nod grab jog hug tip wrap zip knit swim run sit get "
               "put cut begin forget hit shut set win dig spin quit let bet".split())

ADJECTIVES = """
able afraid angry bad beautiful big black blue boring brave bright brilliant broken busy careful cheap
clean clear clever close cold comfortable common complete cool correct crazy cute dangerous dark dead
deep delicious different difficult dirty dry early easy empty excellent excited exciting expensive
famous far fast fat favorite fine foreign free fresh friendly full funny good great green happy hard
healthy heavy helpful high hot huge hungry important impossible interesting kind large late lazy
little local long loud low lucky main modern narrow natural necessary new nice old open perfect poor
popular possible powerful pretty proud public quick quiet rare ready real red rich right sad safe
serious sharp short shy sick similar simple slow small smart social soft special strange strict
strong stupid successful sure sweet tall terrible thick thin tired true ugly useful usual various warm
weak wet white whole wide wild wise wonderful wrong young
absent accurate active adorable adult afraid alive amazing ancient annoyed anxious attractive awful
awkward bored bitter blind bold brief broad calm capable casual charming chubby classic cloudy colorful
comfortable complicated confident confused conscious constant convenient crowded cruel curious curly
cute daily dear decent delightful dense desperate disappointed disgusting dizzy eager efficient elderly
electric elegant embarrassed emotional endless enormous entire equal essential evil exact exhausted
fair faithful false familiar fancy fantastic fat fierce fit flat fluent foolish formal fortunate
frequent frightened frozen furious generous gentle genuine giant glad glorious gorgeous grateful guilty
handsome harmful harsh hilarious honest hopeful horrible humble humid icy ideal identical illegal
independent innocent intelligent intense international jealous joyful junior legal liquid lonely
loose lovely loyal mad magic major marvelous massive mature mean medical mental messy mild minor
miserable modest moral muddy musical mysterious naughty negative nervous noisy normal obvious odd
official optimistic ordinary organic original patient peaceful pleasant polite positive precious
pregnant private professional proper pure rapid reasonable relaxed reliable responsible rough rude
rural salty scared secret selfish senior sensitive severe shiny silent silly sincere sleepy slim smooth
solid sore sour spicy splendid stable steep sticky stiff straight stressful stubborn sudden sufficient
sunny super superb suspicious talented tasty tender tense terrific thankful thirsty tidy tight tiny
total tough traditional tragic tropical typical unhappy unique upset urgent valuable violent visible
vital vivid wealthy weird wicked windy wooden worried worth last
"""

COMPARABLE = set("angry big bright cheap clean clear clever close cold cool cute dark deep dirty dry early easy "
                 "fast fat fine fresh full funny great happy hard healthy heavy high hot huge hungry kind large "
                 "late lazy long loud low lucky narrow new nice old poor pretty proud quick quiet rare rich sad "
                 "safe sharp short shy sick simple slow small smart soft strange strict strong sweet tall thick "
                 "thin ugly warm weak wet wide wild wise young calm rude tiny busy brave mild odd tidy silly sunny windy".split())

ADVERBS = """
about absolutely actually again ago almost alone already also always anyway away back badly carefully
certainly clearly completely definitely easily else enough especially even ever everywhere exactly
finally first fortunately generally hard here hopefully however immediately just lately later less
maybe more most much nearly never now obviously often once only perhaps probably quickly quite
rarely really recently seriously simply slowly sometimes soon still suddenly then there therefore
though today together tomorrow tonight too totally unfortunately usually very well yesterday yet
accidentally angrily anxiously automatically beautifully brightly briefly calmly casually cheerfully
closely comfortably correctly constantly daily deeply deliberately directly eagerly early entirely
equally eventually exactly extremely fairly faithfully fast fluently freely frequently gently gladly
gradually greatly happily hardly heavily highly honestly hungrily instead kindly largely lazily lightly
literally loudly luckily mainly merely mostly naturally nearly neatly nervously nicely normally
occasionally officially originally particularly patiently perfectly personally physically politely
poorly possibly precisely previously properly proudly quietly rapidly readily regularly relatively
repeatedly roughly rudely sadly safely secretly separately sharply silently smoothly softly somewhat
specially strictly strongly successfully surely sweetly terribly thankfully thoroughly tightly truly
typically unexpectedly usefully violently warmly weekly widely wildly wisely yearly
"""

DETERMINERS = "a an the this that these those every each some any no another all both either neither".split()
PRONOUNS = [
    ("i", "i"), ("me", "i"), ("my", "my"), ("mine", "mine"), ("myself", "myself"),
    ("you", "you"), ("your", "your"), ("yours", "yours"), ("yourself", "yourself"),
    ("he", "he"), ("him", "he"), ("his", "his"), ("himself", "himself"),
    ("she", "she"), ("her", "she"), ("hers", "hers"), ("herself", "herself"),
    ("it", "it"), ("its", "its"), ("itself", "itself"),
    ("we", "we"), ("us", "we"), ("our", "our"), ("ours", "ours"), ("ourselves", "ourselves"),
    ("they", "they"), ("them", "they"), ("their", "their"), ("theirs", "theirs"), ("themselves", "themselves"),
    ("who", "who"), ("whom", "who"), ("whose", "whose"), ("which", "which"), ("what", "what"),
    ("someone", "someone"), ("somebody", "somebody"), ("something", "something"),
    ("anyone", "anyone"), ("anybody", "anybody"), ("anything", "anything"),
    ("everyone", "everyone"), ("everybody", "everybody"), ("everything", "everything"),
    ("nobody", "nobody"), ("nothing", "nothing"), ("one", "one"),
]
PREPOSITIONS = ("about above across after against along among around as at before behind below beside "
                "between beyond by despite during except for from in inside into like near of off on onto "
                "out outside over since than through throughout till to toward towards under until up upon "
                "with within without").split()
CONJUNCTIONS = "and but or nor so yet because although though while if unless whereas whether when".split()
PARTICLES = [("not", "not"), ("n't", "not"), ("'s", "'s"), ("'", "'")]
MODALS = [("can", "can"), ("could", "could"), ("will", "will"), ("would", "would"), ("shall", "shall"),
          ("should", "should"), ("may", "may"), ("might", "might"), ("must", "must"),
          ("ca", "can"), ("wo", "will"), ("'ll", "will"), ("'d", "would")]
BE_FORMS = [("be", "be"), ("am", "be"), ("is", "be"), ("are", "be"), ("was", "be"), ("were", "be"),
            ("been", "be"), ("being", "be"), ("'m", "be"), ("'re", "be")]
HAVE_EXTRA = [("'ve", "have")]
NUMBERS = ("zero two three four five six seven eight nine ten eleven twelve twenty thirty forty fifty "
           "hundred thousand million").split()
PUNCT = list(".,!?;:\"()-") + ["...", "--", "``", "''"]


def plural(word):
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if word.endswith("y") and len(word) > 1 and word[-2] not in "aeiou":
        return word[:-1] + "ies"
    return word + "s"


def third_person(verb):
    if verb in ("go", "do"):
        return verb + "es"
    if verb == "have":
        return "has"
    return plural(verb)


def past(verb):
    if verb.endswith("e"):
        return verb + "d"
    if verb.endswith("y") and verb[-2] not in "aeiou":
        return verb[:-1] + "ied"
    if verb in DOUBLING:
        return verb + verb[-1] + "ed"
    return verb + "ed"


def gerund(verb):
    if verb.endswith("ie"):
        return verb[:-2] + "ying"
    if verb.endswith("e") and not verb.endswith(("ee", "ye", "oe")) and verb != "be":
        return verb[:-1] + "ing"
    if verb in DOUBLING:
        return verb + verb[-1] + "ing"
    return verb + "ing"


def comparative(adj):
    if adj.endswith("e"):
        return adj + "r", adj + "st"
    if adj.endswith("y") and adj[-2] not in "aeiou":
        return adj[:-1] + "ier", adj[:-1] + "iest"
    if (len(adj) >= 3 and adj[-1] not in "aeiouwy" and adj[-2] in "aeiou" and adj[-3] not in "aeiou"
            and len(adj) <= 4):
        return adj + adj[-1] + "er", adj + adj[-1] + "est"
    return adj + "er", adj + "est"


def main():
    entries = []
    seen = set()

    def add(word, pos, lemma):
        key = (word, pos)
        if key in seen:
            return
        seen.add(key)
        entries.append((word, pos, lemma))

    irregular_verbs, irregular_nouns, irregular_adjs = {}, {}, {}
    with open(IRREGULAR, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if cols[0] == "VERB":
                irregular_verbs[cols[1]] = (cols[2], cols[3])
            elif cols[0] == "NOUN":
                irregular_nouns[cols[1]] = cols[2]
            elif cols[0] == "ADJ":
                irregular_adjs[cols[1]] = (cols[2], cols[3])

    # Closed classes first so their pos wins as the primary reading.
    for w in DETERMINERS:
        add(w, "DET", w)
    for w, lemma in PRONOUNS:
        add(w, "PRON", lemma)
    for w in PREPOSITIONS:
        add(w, "PREP", w)
    for w in CONJUNCTIONS:
        add(w, "CONJ", w)
    for w, lemma in PARTICLES:
        add(w, "PART", lemma)
    for w, lemma in MODALS + BE_FORMS + HAVE_EXTRA:
        add(w, "VERB", lemma)
    for w in NUMBERS:
        add(w, "NUM", w)
    for p in PUNCT:
        add(p, "PUNCT", p)

    verbs = sorted(set(VERBS.split()) | set(irregular_verbs))
    for v in verbs:
        if v == "be":
            continue
        add(v, "VERB", v)
        add(third_person(v), "VERB", v)
        if v in irregular_verbs:
            p, pp = irregular_verbs[v]
            add(p, "VERB", v)
            add(pp, "VERB", v)
        else:
            add(past(v), "VERB", v)
        add(gerund(v), "VERB", v)

    for n in sorted(set(NOUNS.split()) | set(irregular_nouns)):
        add(n, "NOUN", n)
        if n in irregular_nouns:
            add(irregular_nouns[n], "NOUN", n)
        elif n not in UNCOUNTABLE and n != "clothes" and n != "news" and n != "data":
            add(plural(n), "NOUN", n)

    for a in sorted(set(ADJECTIVES.split()) | set(irregular_adjs)):
        add(a, "ADJ", a)
        if a in irregular_adjs:
            c, s = irregular_adjs[a]
            add(c, "ADJ", a)
            add(s, "ADJ", a)
        elif a in COMPARABLE:
            c, s = comparative(a)
            add(c, "ADJ", a)
            add(s, "ADJ", a)

    for a in ADVERBS.split():
        add(a, "ADV", a)

    out = sys.stdout
    out.write("# word<TAB>POS<TAB>lemma; generated by tools/gen_lexicon.py\n")
    out.write("# The first entry for a word is its default reading.\n")
    for word, pos, lemma in entries:
        out.write(f"{word}\t{pos}\t{lemma}\n")


if __name__ == "__main__":
    main()
