#!/usr/bin/env python3
"""Regenerate the bundled fixture corpus and eval pairs.

The corpus is 60 handwritten documents in six vocabulary-linked topic bands
(climate, oceans, food/water, economy, energy, law) so the default-threshold
graph over hashed embeddings is well connected and multi-hop paths cross
topic boundaries. Output is deterministic: running this script twice yields
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

CAMPS = [
    "Gonzaga",
    "Michigan (7-week)",
    "Northwestern (NHSI)",
    "Dartmouth DDI",
    "Berkeley (CNDI)",
    "Mean Green Comet",
]

ARG_TYPES = [
    "Affirmative",
    "Disadvantage Answers",
    "Counterplan Answers",
    "Kritik Answers",
    "Topicality",
]

# (abstract, extract, closing sentence for the full document)
DOCS: list[tuple[str, str, str]] = [
    # -- climate / warming (D001-D010) --------------------------------------
    (
        "Warming is real and driven by anthropogenic carbon emissions.",
        "Decades of surface temperature records confirm that the planet is warming. "
        "Carbon emissions from fossil fuel combustion are the dominant driver, and every "
        "credible attribution study isolates anthropogenic forcing as the cause of the "
        "observed warming trend across the environment.",
        "Denial of the warming consensus has no place in serious environment policy debate.",
    ),
    (
        "Climate models underestimate the pace of warming feedback loops.",
        "Permafrost thaw releases methane that accelerates warming beyond what climate "
        "models project. Feedback loops in the carbon cycle compound each other, meaning "
        "published warming projections are conservative floors rather than ceilings.",
        "The climate system punishes delay with compounding interest.",
    ),
    (
        "Unchecked warming causes catastrophic and irreversible climate collapse.",
        "Beyond two degrees of warming, tipping cascades in ice sheets and forests lock in "
        "changes no mitigation can reverse. The climate does not negotiate, and the window "
        "for stabilizing emissions is closing within this decade.",
        "Catastrophe is not rhetoric when the mechanism is measured.",
    ),
    (
        "Carbon emissions this decade decide the warming trajectory for centuries.",
        "Cumulative carbon emissions fix the warming commitment of the climate system. "
        "Each year of delay adds warming that persists for a millennium, so near-term "
        "emissions policy is the whole game.",
        "Long-lived gases make climate policy a one-shot decision.",
    ),
    (
        "Warming amplifies extreme weather, displacing millions of people.",
        "Heat waves, floods, and intensified storms track the warming signal in the "
        "climate record. Displacement from uninhabitable regions already outpaces refugee "
        "frameworks, and each increment of warming multiplies the exposed population.",
        "Adaptation budgets cannot keep pace with the climate damage curve.",
    ),
    (
        "Climate inaction is a choice to externalize warming costs onto the future.",
        "Every ton of carbon emitted today is a tax levied on people who cannot vote yet. "
        "Discounting away the warming damage to future generations is an accounting trick, "
        "not an argument about the climate.",
        "Intergenerational equity demands pricing emissions honestly.",
    ),
    (
        "Methane cuts are the fastest lever against near-term warming.",
        "Methane drives a quarter of current warming yet decays within decades. Cutting "
        "methane emissions now shaves peak climate temperatures faster than any carbon "
        "measure, buying time for deeper decarbonization.",
        "Short-lived forcers are the climate policy bargain of the decade.",
    ),
    (
        "Warming already acidifies and heats the oceans beyond natural variability.",
        "A third of emitted carbon dissolves into the oceans, lowering pH while surface "
        "waters absorb the bulk of trapped warming heat. The marine environment records "
        "the climate signal more clearly than any land station.",
        "The oceans are the planet's thermometer and its buffer.",
    ),
    (
        "Climate denial networks launder fossil fuel money into doubt.",
        "Documented funding trails connect fossil interests to think tanks manufacturing "
        "doubt about warming science. The strategy replicates tobacco's playbook, delaying "
        "climate action while emissions compound.",
        "Manufactured uncertainty is itself a measurable pollutant.",
    ),
    (
        "A carbon price aligns markets with climate physics.",
        "Pricing carbon makes every actor internalize the warming cost of emissions. "
        "Border adjustments keep the climate policy leak-proof while revenue recycling "
        "holds households harmless.",
        "Markets decarbonize quickly once the price tells the truth.",
    ),
    # -- oceans / marine (D011-D020) -----------------------------------------
    (
        "Ocean acidification dissolves the base of the marine food web.",
        "Acidifying oceans strip carbonate from the water that shell-forming plankton "
        "need. When the plankton base thins, every marine predator above it starves, and "
        "the fisheries that feed billions follow.",
        "Chemistry is not optional for the ocean food web.",
    ),
    (
        "Ocean warming pushes marine life toward extinction.",
        "Sustained ocean warming bleaches reefs and drives marine species poleward faster "
        "than ecosystems adapt. Extinction cascades through the ocean food web once "
        "keystone species collapse.",
        "Marine extinction is the quiet edge of the warming crisis.",
    ),
    (
        "Extinction follows oxygen depletion through ocean food chains.",
        "Warming water holds less oxygen, and expanding dead zones suffocate marine life "
        "from the bottom of the food chain upward. Oxygen depletion plus overfishing is a "
        "pincer that ends in extinction for commercial stocks.",
        "Dead zones are spreading maps of a suffocating ocean.",
    ),
    (
        "Coral reef collapse erases coastal protection and fisheries together.",
        "Reefs buffer storm surge for a hundred million coastal residents and nurse the "
        "fish stocks local economies eat. Ocean warming and acidification together bleach "
        "reefs past recovery thresholds.",
        "Losing reefs means losing seawalls and food supply in one stroke.",
    ),
    (
        "Overfishing compounds ocean warming into fishery collapse.",
        "Industrial fleets remove marine biomass faster than warming-stressed stocks can "
        "rebuild. Subsidized overfishing plus a heating ocean pushes fisheries into the "
        "collapse regime seen in cod and anchoveta.",
        "Fleets are racing each other to the last fish.",
    ),
    (
        "Marine protected areas rebuild fish stocks and coastal food security.",
        "No-take marine reserves rebuild spawning biomass that spills over into adjacent "
        "fisheries. Protection is the rare ocean policy where food security and "
        "conservation point the same direction.",
        "Reserves are fish factories with free delivery.",
    ),
    (
        "Sea level rise from melting ice threatens every port economy.",
        "Melting ice sheets commit the ocean to meters of rise that will inundate port "
        "infrastructure the global economy depends on. Relocating harbors costs trillions "
        "the trade system has not priced.",
        "The waterline is moving and the ledgers have not noticed.",
    ),
    (
        "Plastic pollution chokes marine ecosystems already stressed by warming.",
        "Microplastic loads in the ocean now exceed plankton mass in some gyres. Plastic "
        "toxins bioaccumulate up the marine food chain onto dinner plates.",
        "The ocean returns what the economy discards.",
    ),
    (
        "Ocean collapse triggers famine in fish-dependent nations.",
        "Three billion people draw protein from the ocean, and marine collapse converts "
        "that dependence into famine. Food security planning that ignores fisheries is "
        "planning for hunger.",
        "The sea is a breadbasket with no substitute on the shelf.",
    ),
    (
        "Blue carbon habitats sequester emissions while shielding coasts.",
        "Mangroves and seagrass lock away carbon per hectare at rates forests envy, while "
        "damping storm surge. Protecting blue carbon is climate mitigation and coastal "
        "adaptation in a single ocean policy.",
        "The cheapest carbon capture grows in the tide line.",
    ),
    # -- food / water / agriculture (D021-D030) -------------------------------
    (
        "Warming prevents drought from staying a regional problem.",
        "Shifted jet streams spread drought across breadbaskets simultaneously, an outcome "
        "crop insurance never modeled. Synchronized harvest failure turns regional water "
        "stress into global food shock.",
        "Drought no longer respects the borders planners drew.",
    ),
    (
        "Drought and heat shrink global crop yields every season.",
        "Staple crop yields fall measurably for every degree of warming, and drought "
        "compounds the heat penalty. Agricultural models show maize and wheat losses "
        "accelerating past adaptation capacity.",
        "The harvest math no longer closes without emissions cuts.",
    ),
    (
        "Water scarcity is the binding constraint on food production.",
        "Irrigation draws down aquifers faster than rain recharges them, and water "
        "scarcity now caps food production in every major farming basin. Depleted "
        "groundwater is a one-way resource on human timescales.",
        "Farms run on water the way economies run on energy.",
    ),
    (
        "Famine follows when food prices spike past household income.",
        "Grain price spikes translate directly into famine for import-dependent nations. "
        "Food riots and state failure track the price index with grim reliability.",
        "Hunger is a market signal read too late.",
    ),
    (
        "Soil degradation quietly forecloses future food security.",
        "Erosion and salinization retire farmland faster than reclamation restores it. "
        "Degraded soil cannot be legislated back, and food security erodes with it.",
        "Topsoil is civilization's least renewable resource.",
    ),
    (
        "Recent studies show economic growth depleting water resources.",
        "New basin-level studies show industrial growth drawing water resources down "
        "faster than any agricultural use. Economic expansion without water accounting "
        "bankrupts the resource the growth depends on.",
        "The growth ledger omits its largest withdrawal.",
    ),
    (
        "Irrigation efficiency frees water without cutting harvests.",
        "Drip systems and soil sensors cut agricultural water use by a third while "
        "holding food output constant. Efficiency is the cheapest new water supply any "
        "basin can buy.",
        "The driest farms already prove the technique works.",
    ),
    (
        "Fertilizer runoff links farm policy to ocean dead zones.",
        "Nitrogen runoff from subsidized fertilizer feeds the algal blooms that suffocate "
        "coastal fisheries. Farm policy and ocean policy are the same water, one basin "
        "apart.",
        "What the field sheds, the sea inherits.",
    ),
    (
        "Food system emissions rival those of the energy sector.",
        "Agriculture and land use emit a third of greenhouse gases, from methane to "
        "cleared forests. Food policy is climate policy whether ministries admit it or "
        "not.",
        "No pathway to stabilization skips the dinner plate.",
    ),
    (
        "Crop diversity insures food supply against synchronized failure.",
        "Monoculture breeds the synchronized failure that drought exploits. Diverse "
        "cultivars and regional food networks cap the downside of any single harvest "
        "collapse.",
        "Resilience is planted, not purchased after the fact.",
    ),
    # -- economy / growth / resources (D031-D040) -----------------------------
    (
        "Economic development accelerates resource depletion.",
        "Every percentage point of economic development draws down finite resource stocks, "
        "from aquifers to ore grades. Development that ignores depletion books the "
        "liquidation of natural capital as income.",
        "Growth accounting hides the drawdown in plain sight.",
    ),
    (
        "Unchecked consumption growth dooms the warming fight.",
        "Efficiency gains are swallowed by expanding consumption, so absolute emissions "
        "keep rising with growth. Decoupling remains a projection while the warming "
        "budget is a measurement.",
        "The growth curve and the carbon curve are still the same line.",
    ),
    (
        "Degrowth in rich economies is the honest climate arithmetic.",
        "High-income consumption drives the emissions majority, and contraction there "
        "frees the carbon budget development elsewhere requires. The economy must shrink "
        "its material throughput or the climate shrinks it instead.",
        "Arithmetic is not ideology, however it polls.",
    ),
    (
        "Resource wars follow scarcity across every historical dataset.",
        "Scarcity of water and arable land predicts armed conflict better than ideology "
        "in the conflict datasets. Resource depletion loads the gun that politics fires.",
        "Scarcity is the oldest casus belli with the newest data.",
    ),
    (
        "Green investment decouples prosperity from resource depletion.",
        "Renewable infrastructure investment returns more jobs per dollar than fossil "
        "spending while cutting resource throughput. The economy can grow in value while "
        "shrinking in material, but only with deliberate investment policy.",
        "Prosperity and depletion are separable with intent.",
    ),
    (
        "Air pollution drives ecosystems toward extinction.",
        "Particulate and ozone pollution degrade every exposed ecosystem, driving "
        "pollinator extinction and forest dieback. The same combustion that drives "
        "warming poisons the air economies breathe.",
        "Extinction arrives through lungs as well as climate.",
    ),
    (
        "GDP mismeasures welfare by counting harm to the environment as income.",
        "National accounts book a depleted aquifer and a felled forest as pure income. "
        "Correcting GDP for harm to the environment flips the sign on decades of "
        "reported growth in resource-dependent economies.",
        "What the metric hides, the policy repeats.",
    ),
    (
        "Circular production caps resource depletion without ending trade.",
        "Closing material loops keeps economies within resource budgets while preserving "
        "exchange. Circular design cuts virgin extraction by half in the sectors that "
        "tried it.",
        "Waste is a design failure, not an economic law.",
    ),
    (
        "Stranded fossil assets threaten financial stability.",
        "Climate policy renders fossil reserves unburnable, stranding trillions in booked "
        "assets. The economy's balance sheets carry warming risk no regulator has "
        "stress-tested.",
        "The correction arrives whether markets price it early or late.",
    ),
    (
        "Inequality decides who pays for climate transition costs.",
        "Transition costs land on households least able to bear them unless policy "
        "deliberately redistributes. A just transition is the political precondition for "
        "any durable climate economy.",
        "Fairness is load-bearing in climate politics.",
    ),
    # -- energy / grid (D041-D050) --------------------------------------------
    (
        "Renewable energy is now the cheapest electricity in history.",
        "Auction prices for solar and wind undercut every fossil alternative, making "
        "renewable energy the default economic choice. The grid transition is no longer a "
        "cost question but a deployment question.",
        "The learning curve beat the lobbyists.",
    ),
    (
        "Grid storage solves the intermittency objection to renewables.",
        "Battery storage costs fell ninety percent in a decade, letting the grid shift "
        "renewable energy across hours and seasons. Intermittency is an engineering "
        "schedule, not a physical limit.",
        "Storage turns weather into dispatch.",
    ),
    (
        "Fossil fuel subsidies rig the energy market against the environment.",
        "Direct and implicit subsidies hand fossil energy trillions annually, dwarfing "
        "renewable support. Ending the subsidy rig is the cheapest emissions policy on "
        "any table.",
        "The market is not free while the ledger is tilted.",
    ),
    (
        "Nuclear power is essential firm capacity for deep decarbonization.",
        "Every modeled pathway to a stable zero-carbon grid leans on firm nuclear "
        "capacity alongside renewable energy. Retiring reactors early raises emissions "
        "and grid fragility in the same stroke.",
        "Firm power is the keel of the energy transition.",
    ),
    (
        "Transmission buildout is the bottleneck of the energy transition.",
        "Queued renewable projects exceed national demand, stalled behind transmission "
        "approvals. The grid interconnection queue, not technology, is the binding "
        "constraint on energy decarbonization.",
        "Wires are the scarcest resource in the transition.",
    ),
    (
        "Energy efficiency is the invisible first fuel of the economy.",
        "Efficiency standards cut energy demand at negative cost, shrinking the grid the "
        "transition must build. The cheapest kilowatt remains the one never generated.",
        "Demand is a supply strategy wearing camouflage.",
    ),
    (
        "Distributed solar democratizes energy and hardens the grid.",
        "Rooftop solar with storage keeps neighborhoods lit when the central grid fails. "
        "Distributed energy turns consumers into infrastructure and blackouts into "
        "inconveniences.",
        "Resilience scales down as well as up.",
    ),
    (
        "Hydrogen hype diverts energy investment from proven options.",
        "Hydrogen loses most input energy in conversion, making it a niche fuel rather "
        "than a grid backbone. Investment chasing hydrogen hype starves the wires and "
        "storage the energy transition actually needs.",
        "Thermodynamics audits every subsidy eventually.",
    ),
    (
        "Coal plant retirements pay for themselves in health savings.",
        "Closing coal plants returns immediate health dividends that exceed replacement "
        "energy costs. Particulate reductions alone repay the grid investment before "
        "climate benefits are even counted.",
        "The cheapest medicine is an unlit smokestack.",
    ),
    (
        "Energy transition investment outruns fossil capital for the first time.",
        "Global capital now places more investment in renewable energy and grid assets "
        "than in fossil extraction. Finance has read the climate physics even where "
        "politics has not.",
        "Money moved first; policy is catching up.",
    ),
    # -- law / courts / regulation (D051-D060) ---------------------------------
    (
        "Courts are becoming the decisive climate policy venue.",
        "Climate litigation forces regulation that legislatures deadlock on, from "
        "emissions caps to disclosure rules. Courts translate climate science into "
        "enforceable law one precedent at a time.",
        "The docket is the new negotiating table.",
    ),
    (
        "Regulation outperforms voluntary pledges in every emissions dataset.",
        "Binding regulation delivers measured emissions cuts where voluntary corporate "
        "pledges deliver press releases. Law, not goodwill, bends the curve in the "
        "compliance data.",
        "Enforcement is the active ingredient of policy.",
    ),
    (
        "The public trust doctrine obligates states to protect the atmosphere.",
        "Public trust law already obligates states to steward shared resources, and the "
        "atmosphere meets every doctrinal test. Courts extending the trust to climate "
        "close the accountability gap legislatures left open.",
        "Old doctrine, new atmosphere, same duty.",
    ),
    (
        "Liability suits make fossil producers internalize climate damages.",
        "Attribution science lets courts apportion warming damages to specific producers. "
        "Liability converts externalized climate costs into line items the law can "
        "collect.",
        "The invoice for emissions finally has an address.",
    ),
    (
        "Environmental review law safeguards communities from energy siting abuse.",
        "Review statutes give frontline communities standing against polluting energy "
        "siting. Gutting review trades procedural justice for a schedule no court will "
        "uphold.",
        "Speed bought by silencing is litigation deferred.",
    ),
    (
        "Permitting reform must not gut environmental law.",
        "Transmission and renewable buildout need faster permits, but reform that guts "
        "environmental review invites the backlash that stalls the grid for a decade. "
        "Law that moves fast and fairly is the only durable speed.",
        "Haste without process is delay with extra steps.",
    ),
    (
        "International climate law binds states through trade enforcement.",
        "Border carbon adjustments give international climate law the enforcement teeth "
        "treaties lack. Trade regulation converts climate pledges into customs law no "
        "state can shrug off.",
        "Tariffs speak the one language every ministry understands.",
    ),
    (
        "Youth standing suits reframe climate as constitutional law.",
        "Youth plaintiffs argue that warming deprives them of life and property without "
        "due process. Constitutional climate law reframes emissions from policy choice to "
        "rights violation.",
        "The constitution has no sunset clause.",
    ),
    (
        "Corporate disclosure rules price climate risk into markets.",
        "Mandatory climate risk disclosure lets investors price stranded assets and "
        "physical exposure. Securities regulation is climate policy conducted through "
        "accounting.",
        "Sunlight is a fiduciary duty now.",
    ),
    (
        "Administrative deference decides the fate of climate regulation.",
        "Doctrines of deference determine whether expert agencies can regulate emissions "
        "at all. The quiet fights over administrative law are the loud fights over "
        "climate, one step removed.",
        "Procedure is substance with a poker face.",
    ),
]

PAIRS: list[tuple[str, str]] = [
    ("Warming is real and caused by carbon emissions", "Economic development accelerates resource depletion"),
    ("Carbon emissions accelerate climate warming", "Famine follows global food price spikes"),
    ("Ocean acidification destroys marine food webs", "Unchecked consumption growth dooms the warming fight"),
    ("Drought shrinks global crop yields", "Renewable energy is the cheapest electricity"),
    ("A carbon price aligns markets with climate physics", "Courts are the decisive climate policy venue"),
    ("Ocean warming pushes marine life toward extinction", "Water scarcity caps food production"),
    ("Economic growth depletes water resources", "Grid storage solves renewable intermittency"),
    ("Soil degradation forecloses food security", "Regulation outperforms voluntary pledges"),
    ("Energy transition investment outruns fossil capital", "Unchecked warming causes irreversible climate collapse"),
    ("Administrative deference decides climate regulation", "Ocean collapse triggers famine in fishing nations"),
]

AUTHORS = [
    "Hansen", "Mora", "Keeling", "Archer", "Oreskes", "Figueres", "Shindell",
    "Caldeira", "Supran", "Nordhaus", "Doney", "Pauly", "Breitburg", "Hughes",
    "Worm", "Roberts", "Dutton", "Jambeck", "Golden", "Duarte", "Trenberth",
    "Lobell", "Famiglietti", "Sen", "Montgomery", "Dalin", "Postel", "Diaz",
    "Foley", "Khoury", "Daly", "Jackson", "Hickel", "Homer-Dixon", "Pollin",
    "Ceballos", "Stiglitz", "Stahel", "Carney", "Piketty", "Jacobson", "Ziegler",
    "Coady", "Jenkins", "Gramlich", "Lovins", "Kammen", "Liebreich", "Markandya",
    "Bond", "Gerrard", "Victor", "Wood", "Burger", "Bullard", "Freeman",
    "Mehling", "Juliana", "Gensler", "Lazarus",
]


def build_docs() -> list[dict]:
    docs = []
    for i, (abstract, extract, closing) in enumerate(DOCS):
        doc_id = f"D{i + 1:03d}"
        year = 2013 + (i % 10)
        camp = CAMPS[i % len(CAMPS)]
        arg_type = ARG_TYPES[i % len(ARG_TYPES)]
        author = AUTHORS[i % len(AUTHORS)]
        citation = f"{author} {str(year)[2:]} ({author}, professor, peer-reviewed study)"
        full_text = f"{abstract} {extract} {closing}"
        docs.append(
            {
                "id": doc_id,
                "fullDocument": full_text,
                "extract": extract,
                "abstract": abstract,
                "citation": citation,
                "camp": camp,
                "tag": arg_type,
                "year": year,
            }
        )
    return docs


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    corpus_path = FIXTURES / "mini_corpus.jsonl"
    with corpus_path.open("w", encoding="utf-8") as fh:
        for doc in build_docs():
            fh.write(json.dumps(doc, ensure_ascii=False) + "\n")
    pairs_path = FIXTURES / "eval_pairs.jsonl"
    with pairs_path.open("w", encoding="utf-8") as fh:
        for start, end in PAIRS:
            fh.write(json.dumps({"start": start, "end": end}, ensure_ascii=False) + "\n")
    print(f"wrote {corpus_path} and {pairs_path}")


if __name__ == "__main__":
    main()
