#!/usr/bin/env python3
"""Writes the bundled language-identification corpora.

Each language's word list is shuffled and split: the first part seeds the
training corpus (data/langid/<code>.train.txt), the rest seeds 200 held-out
sentences (data/langid/<code>.heldout.txt). A held-out word never occurs in
any training corpus. Hindi, Tamil and Malayalam are romanized, which is how
most code-mixed comments are written.
"""

import pathlib
import random

WORDS = {
    "en": """
the of and to in is you that it he was for on are as with his they at be this
have from or one had by word but not what all were we when your can said there
use an each which she do how their if will up other about out many then them
these so some her would make like him into time has look two more write go see
number no way could people my than first water been call who oil its now find
long down day did get come made may part over new sound take only little work
know place year live me back give most very after thing our just name good
sentence man think say great where help through much before line right too mean
old any same tell boy follow came want show also around form three small set
put end does another well large must big even such because turn here why ask
went men read need land different home us move try kind hand picture again
change off play spell air away animal house point page letter mother answer
found study still learn should america world high every near add food between
own below country plant last school father keep tree never start city earth
eye light thought head under story saw left few while along might close
something seem next hard open example begin life always those both paper
together got group often run important until children side feet car mile
night walk white sea began grow took river four carry state once book hear stop
without second later miss idea enough eat face watch far real almost let above
girl sometimes mountain cut young talk soon list song being leave family
happy hope love peace kindness support together strength courage dream believe
future brighter friends proud inspire beautiful wonderful grateful thank
blessing faith heart smile community equality respect everyone deserve
clearly english really quite always nothing everything whatever
""",
    "hi": """
hai main tum aap kya nahi bahut accha pyaar dil zindagi dost bhai behen maa
pita ghar kaam paani khana raat din subah shaam duniya log sab kuch kabhi
hamesha abhi phir lekin aur ya toh bhi sirf bas kyun kaise kahan kaun kitna
yahan wahan mera tera hamara tumhara unka iska uska apna khud sapna umeed
khushi dukh gussa darr himmat taakat sach jhooth bura naya purana bada chhota
lamba sundar pyaara mushkil aasaan zaroor shayad bilkul sahi galat dekho suno
bolo chalo jao aao karo raho socho samjho likho padho khelo hasna rona jeena
marna milna bichhadna intezaar yaad baat sawaal jawaab kahani gaana mausam
baarish dhoop hawa aasmaan zameen sitaare chaand suraj phool patta ped nadi
pahaad samundar sheher gaon sadak gaadi rasta safar manzil waqt pal saal
mahina hafta kal aaj parson pehle baad saath akela sabse zyada kam thoda
poora aadha ek teen char paanch chhe saat aath nau das beta beti bachche
buzurg padosi mehmaan shaadi tyohaar mela mandir bazaar dukaan paisa naukri
padhai imtihaan kitaab kalam kursi darwaaza khidki kamra chhat rasoi roti
chawal daal sabzi doodh chai cheeni namak mirchi meetha khatta thanda garam
gila sookha saaf ganda jaldi dheere zor shor chup khamosh pareshaan thaka
bhookha pyaasa bimaar theek mazboot kamzor ameer gareeb izzat sharam bharosa
vishwas dhanyavaad shukriya maafi kripya namaste haan nahin mat chahiye sakta
sakti raha rahi gaya gayi tha thi hoga hogi karenge jayenge denge lenge hum
woh yeh inko unko mujhe tujhe humein tumhe dekhna sunna kehna batana
samajhna sochna chalna daudna udna girna uthna baithna sona jaagna
""",
    "ta": """
naan nee neenga avan aval avanga naanga enna epdi enga eppo yaen yaar evlo
romba konjam nalla kettadhu azhagu anbu kadhal nanban thambi akka anna appa
paati thaatha veedu vaazhkai ulagam makkal ellaarum onnum irukku irundhu
varen ponen vandhen solren paakren kekren saapten thoonguren vilayaaduren
padikkiren ezhudhuren odi nadandhu sirippu azhugai kobam bayam dhairiyam
nambikkai sandhosham kashtam vali sugam udambu manasu kaadhu vaai kai kaal
thalai pallu thanni saapadu sooru kuzhambu rasam thayir kaapi dosai idli
vadai pongal biriyani maadu naai poonai maram poo ilai kaai vayal aaru malai
vaanam nilavu suriyan natchathiram mazhai kaathu pani kaalai madhiyam
saayangaalam iravu naal vaaram varusham naalaikku nethu inniku ippo appuram
munnadi pinnadi keezha ulla veliya pakkathula dhooram seekiram medhuva
sathama amaidhiya periya chinna pudhu pazhaya kuttai uyaram sakthi velai
kaasu panam kadai sandhai kovil kalloori aasiriyar maanavan puthagam thervu
mathippen vetri muyarchi uzhaippu kanavu ninaivu unmai poi nermai nyaayam
urimai kadamai samuthaayam oor theru perundhu rayil payanam nandri vanakkam
mannikkavum dhayavu seiyungal paarunga vaanga ponga sollunga kudunga edunga
irunga theriyum theriyadhu puriyudhu puriyala venum vendaam mudiyum
mudiyadhu aachu aagum aagadhu pannunga panren pannitten sollitten
vandhuttaan poittaan irukkaanga varuvaanga kudukkaraanga thalaivar padam
isai aattam kondaattam thiruvizha kuzhandhai pasanga ponnu paiyan manaivi
purushan sondham kootam thanimai ottrumai valimai porumai anbaana
arumaiyaana semma thalaiva indha andha dhaan mattum maari kitta kaaga
rendu moonu naalu anju vidunga paravaayilla kandippa nijamaave ungaluku
enakku unakku avangaluku yellarukkum engalukku pesuvom vaazhga vaazhthukkal
pannalaam sollalaam pogalaam varalaam paakalaam kekkalaam aarambikkalaam
kettirukken paathirukken padichirukken ezhudhirukken paadirukken
pannumbodhu sollumbodhu pogumbodhu varumbodhu paakkumbodhu irukkumbodhu
pannaadheenga sollaadheenga pogaadheenga varaadheenga azhaadheenga
mudiyala pidikkum pidikkala thonudhu thonala pudichirukku kastama
sandhoshama nallaa mosam paravaala veettula ooru naattula palliyila
edathula nanbanoda ammavoda appavoda annanoda akkavoda kozhandhaiyoda
magan magal maama athai periyappa chithappa thangachi machan machi
aana aanaalum adhanaala appadinaa appo ippovum eppovum orunaalum
onnumilla yaarumilla engayumilla ennennamo yaaryaaro engengeyo
edhavadhu romba naala kammiyaana adhigamaana mudinjidhu aarambichu nikkudhu
""",
    "ml": """
njan ningal avar njangal nammal enthu engane evide eppol enthinu ethra
valare kurachu cheetha sundaram sneham pranayam koottukaran aniyan chechi
chettan achan ammoomma appooppan jeevitham lokam janangal ellam undu aanu
alla varunnu poyi vannu parayunnu kaanunnu kelkkunnu kazhichu urangunnu
kalikkunnu padikkunnu ezhuthunnu odunnu nadakkunnu chiri karachil deshyam
pedi dhairyam pratheeksha santhosham vishamam vedana sukham shareeram
manassu cheviyu mookku vaayu kayyu kaalu thala mudi vellam bhakshanam choru
sambar thairu paalu chaaya dosa puttu appam kadala meen kozhi pashu patti
poocha kaakka kuruvi poovu ila pazham puzha kadal mala aakasham chandran
sooryan nakshathram mazha kaattu veyil manju raavile uchakku vaikunneram
raathri divasam aazhcha maasam varsham naale innale innu ippol pinne munpu
shesham mukalil thazhe akathu purathu aduthu vegam pathukke ucchathil
shaanthamaayi valiya cheriya puthiya neelam shakthi joli paisa kada chantha
ambalam palli adhyaapakan vidyaarthi pusthakam paadam pareeksha vijayam
tholvi shramam adhwaanam swapnam ormma sathyam nunna neethi avakaasham
kadama samooham naadu theruvu vandi theevandi yaathra nanni namaskaram
kshamikkanam dayavaayi cheyyoo nokkoo varoo pokoo parayoo tharoo edukkoo
irikkoo ariyaam ariyilla manassilaayi manassilaayilla venam venda pattum
pattilla kazhinju aakum aakilla cheythu cheyyunnu paranju vannittundu
poyittundu irikkunnu varum kodukkunnu nethaavu paattu sangeetham nritham
aaghosham utsavam kunju pillere penkutti aankutti bharya bharthaavu bandhu
bandham koottam ekaanthatha aikyam karuthu kshama snehamulla adipoli
polichu kidilan mone mole ente ninte avante avalude njangalude nammude
ivide avide inganeyaanu angane enthaa alle aano ennu kondu vendi pole koode
maathram thanne ithu athu oru randu moonnu
cheyyaam parayaam pokaam varaam kaanaam nokkaam thudangaam nirthaam
kettittundu kandittundu vaayichittundu ezhuthiyittundu paadiyittundu
cheyyumbol parayumbol pokumbol varumbol kaanumbol kelkkumbol irikkumbol
cheyyaruthu parayaruthu pokaruthu varaaruthu karayaruthu
kazhiyilla pattathilla ariyathilla thonnunnu thonniyilla ishtamaanu
ishtappettu sankadam santhoshamaayi nannaayi mosham kollaam kollilla
veettil naattil palliyil schoolil sthalathu koottukaarude ammayude
achante chettante chechiyude kunjinte makan makal ammaavan ammaayi
valiyachan kochu kochettan ikka itha umma uppa vaappa pinnilla pakshe
athukondu enkilum ennittu ennaal athinaal appol ippozhum eppozhum
orikkalum onnumilla aarumilla evideyumilla enthokke aarokke evideyokke
vallathum kurekkaalam kuranjathu koodiyathu theernnu thudangi nirthi
""",
}

TRAIN_FRACTION = 0.6
TRAIN_SENTENCES = 300
HELDOUT_SENTENCES = 200


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data" / "langid"
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20210419)

    train_words = {}
    rest = {}
    for code in sorted(WORDS):
        words = sorted(set(WORDS[code].split()))
        rng.shuffle(words)
        cut = int(len(words) * TRAIN_FRACTION)
        train_words[code] = words[:cut]
        rest[code] = words[cut:]

    seen = set().union(*train_words.values())
    for code in sorted(WORDS):
        heldout_words = [w for w in rest[code] if w not in seen]
        with open(out_dir / f"{code}.train.txt", "w", encoding="utf-8") as f:
            for _ in range(TRAIN_SENTENCES):
                n = rng.randint(6, 12)
                f.write(" ".join(rng.choice(train_words[code]) for _ in range(n)) + "\n")
        with open(out_dir / f"{code}.heldout.txt", "w", encoding="utf-8") as f:
            for _ in range(HELDOUT_SENTENCES):
                n = rng.randint(5, 10)
                f.write(" ".join(rng.choice(heldout_words) for _ in range(n)) + "\n")
        print(code, len(train_words[code]), "train words,", len(heldout_words), "held-out words")


if __name__ == "__main__":
    main()
