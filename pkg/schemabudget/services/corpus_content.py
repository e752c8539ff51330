"""
Seeded content tables for the NovaTech corpus and question set.

Every question is drafted together with the sentences that must appear in its
gold chunk and, for tool-backed questions, the evidence record the simulated
tool returns. The benchmark generator places the sentences into chunks.
"""

from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..models.benchmark import NOT_ANSWERABLE, ChunkCategory, GoldTool, QuestionType
from .catalog_templates import DEPARTMENTS, MONTHS, OFFICES, PRODUCTS, REGIONS, SERVICES, TEAMS, TIERS

PEOPLE = [
    "Amara Okafor", "Jonas Weber", "Priya Raman", "Lucas Moreau", "Mei Tanaka",
    "Diego Alvarez", "Sofia Rossi", "Kwame Mensah", "Hannah Fischer", "Ravi Iyer",
    "Elena Petrova", "Tomas Novak", "Aisha Bello", "Lars Nilsson", "Chloe Martin",
    "Mateo Silva", "Yuki Sato", "Noah Becker", "Fatima Haddad", "Oliver Grant",
    "Ingrid Larsen", "Samuel Adeyemi", "Leila Farouk", "Daniel Kim", "Marta Kowalska",
    "Hugo Laurent", "Nadia Hussein", "Ethan Cole", "Zara Ahmed", "Felix Braun",
    "Camila Reyes", "Ahmed Nasser", "Julia Santos", "Victor Ivanov", "Grace Liu",
    "Omar Sharif", "Anna Lindqvist", "Bruno Costa", "Ines Duarte", "Kofi Asante",
]

PRODUCT_NAMES = {
    "nova_cloud": "NovaCloud",
    "nova_edge": "NovaEdge",
    "nova_sense": "NovaSense",
    "nova_pay": "NovaPay",
    "nova_desk": "NovaDesk",
}

OFFICE_NAMES = {office: office.capitalize() for office in OFFICES}
MONTH_NAMES = {month: month.capitalize() for month in MONTHS}
REGION_NAMES = {region: region.replace("_", " ").title() for region in REGIONS}
SERVICE_NAMES = {
    "api_gateway": "API gateway",
    "billing": "billing",
    "auth": "authentication",
    "search": "search",
    "storage": "storage",
}

# (policy, attribute, unit, low, high, step)
POLICY_FACTS: List[Tuple[str, str, str, int, int, int]] = [
    ("remote work", "number of remote days allowed per week", "days", 2, 4, 1),
    ("travel", "daily meal allowance", "euros", 45, 90, 5),
    ("parental leave", "length of paid parental leave", "weeks", 12, 26, 2),
    ("equipment", "laptop refresh cycle", "months", 24, 48, 6),
    ("learning", "annual training budget per employee", "euros", 1000, 3000, 250),
    ("on-call", "maximum number of consecutive on-call days", "days", 5, 10, 1),
    ("expense", "receipt threshold for reimbursements", "euros", 20, 50, 5),
    ("security", "password rotation interval", "days", 60, 180, 30),
    ("vacation", "annual vacation allowance", "days", 25, 32, 1),
    ("relocation", "relocation bonus", "euros", 5000, 12000, 500),
    ("overtime", "overtime compensation rate", "percent", 125, 175, 25),
    ("sabbatical", "minimum tenure for a sabbatical", "years", 3, 7, 1),
    ("mobile phone", "monthly phone allowance", "euros", 20, 60, 5),
    ("conference", "number of paid conference days per year", "days", 3, 8, 1),
    ("home office", "one-time home office stipend", "euros", 300, 900, 50),
    ("referral", "employee referral bonus", "euros", 1000, 4000, 250),
]

SPEND_LABELS = [
    "marketing spend", "research spend", "travel spend",
    "cloud infrastructure spend", "customer refunds", "contractor spend",
]

FINANCE_METRICS = ["revenue", "operating_cost", "gross_margin", "net_income", "ebitda", "cash_flow"]

COMPANY_METRICS: Dict[str, Tuple[str, str, float, float]] = {
    "churn_rate": ("churn rate", "percent", 0.5, 6.0),
    "arpu": ("average revenue per user", "euros", 40.0, 400.0),
    "ltv": ("customer lifetime value", "euros", 2000.0, 20000.0),
    "cac": ("customer acquisition cost", "euros", 300.0, 3000.0),
    "nps": ("net promoter score", "points", 10.0, 70.0),
    "burn_rate": ("burn rate", "million euros", 0.5, 8.0),
}

CURRENCY_RATES = {"USD": 1.0, "EUR": 1.08, "GBP": 1.27, "JPY": 0.0067, "CAD": 0.73, "SGD": 0.74}

UNANSWERABLE_QUESTIONS = [
    "Who leads the quantum computing department?",
    "Who is the office manager in Oslo?",
    "How many concurrent sessions per workspace does NovaVault support?",
    "Under the pet insurance policy, what is the monthly premium?",
    "What is the parking allowance at the Lima office?",
    "How much marketing spend did NovaTech report for Q2 2031?",
    "When was NovaMesh version 2.0 released?",
    "Which floor of the headquarters does the aerospace department sit on?",
    "Who is NovaTech's chief happiness officer?",
    "How many electric vehicles does the Berlin office lease?",
    "How many people attended the 2019 NovaTech summer party?",
    "Which airline does NovaTech use for charter flights?",
]

UNANSWERABLE_ALIASES = ["unanswerable", "cannot be answered", "no answer"]

FILLER_SENTENCES: Dict[ChunkCategory, List[str]] = {
    ChunkCategory.POLICY: [
        "Policies are reviewed once a year by the people operations council.",
        "Managers are expected to explain policy changes to their teams within two weeks.",
        "Exceptions to any policy require written approval from a department head.",
        "The handbook is the authoritative source whenever a local guideline disagrees.",
        "Employees acknowledge the current handbook during their onboarding week.",
        "Questions about interpretation should be raised with the people partner of the team.",
        "Country-specific addenda may grant additional benefits where local law requires it.",
        "Contractors follow the policies named in their statement of work instead.",
        "Requests are filed through the internal service portal and tracked to completion.",
        "Approvals older than ninety days must be renewed before they can be used.",
        "Audit findings related to policy compliance are reported to the executive team.",
        "Draft policies are shared for comment on the intranet before they take effect.",
        "Translations of the handbook are provided for every office language.",
        "Repeated violations are handled through the documented disciplinary process.",
        "Team leads keep a record of approved exceptions for the annual review.",
        "Policy owners publish a short summary of every change in the company newsletter.",
        "Benefits that depend on tenure are calculated from the first day of employment.",
        "Part-time employees receive prorated benefits unless a policy states otherwise.",
    ],
    ChunkCategory.FINANCIAL: [
        "Quarterly figures are consolidated by the finance team within ten business days.",
        "All amounts are audited by an external firm before the annual report is published.",
        "Budget owners receive a variance summary at the end of every month.",
        "Capital expenditures above the approval threshold require a board resolution.",
        "Forecasts are refreshed after each quarter closes using the latest bookings.",
        "Intercompany transfers are eliminated in the consolidated statements.",
        "Currency effects are reported separately from organic growth.",
        "Cost centers map one to one onto the departments in the org chart.",
        "Accruals are reversed at the start of the following reporting period.",
        "The treasury team manages cash across the regional bank accounts.",
        "Spending freezes are announced by the chief financial officer in writing.",
        "Vendor invoices are paid on net thirty terms unless negotiated otherwise.",
        "Revenue is recognized when the service is delivered to the customer.",
        "Department heads present their budget requests during the planning cycle.",
        "Savings targets are tracked in the shared finance dashboard.",
        "Late expense reports delay the monthly close and are escalated to managers.",
        "Tax filings are prepared by the regional finance leads with external advisors.",
        "Procurement reviews every new supplier before the first purchase order.",
    ],
    ChunkCategory.ORG: [
        "The organization is structured into departments, each with a dedicated leader.",
        "Reporting lines are published in the org chart on the intranet.",
        "Cross-functional squads are formed for initiatives that span several departments.",
        "New hires are paired with an onboarding buddy from a neighboring team.",
        "Leadership meets weekly to review priorities and staffing needs.",
        "Teams hold retrospectives at the end of every planning increment.",
        "Internal mobility is encouraged after twelve months in a role.",
        "Every office has a site lead responsible for facilities and safety.",
        "Department all-hands meetings take place at the start of each quarter.",
        "Hiring plans are aligned with the annual operating plan.",
        "Managers hold regular one-on-one meetings with each direct report.",
        "Succession plans are reviewed by the executive team once a year.",
        "Employee surveys are run twice a year and results are shared openly.",
        "Volunteering days can be used for community projects near each office.",
        "Team charters describe the mission and the key responsibilities of a group.",
        "Promotions are decided in calibration sessions held every six months.",
        "Interns are assigned a mentor for the full length of their placement.",
        "The employee directory lists roles, locations and contact details.",
    ],
    ChunkCategory.PRODUCT: [
        "The product line shares a common identity and billing platform.",
        "Release notes are published on the customer portal with every version.",
        "Customers can request features through their account manager.",
        "Security patches are shipped outside the regular release train when needed.",
        "Every release passes automated regression tests before rollout.",
        "Rollouts start with a small group of pilot customers in each region.",
        "Deprecated features are announced at least two releases in advance.",
        "The status page reports incidents and scheduled maintenance windows.",
        "Support engineers have read access to product telemetry dashboards.",
        "Integrations with third-party tools are maintained by the platform team.",
        "Data is encrypted at rest and in transit across all products.",
        "Enterprise customers can choose the region where their data is stored.",
        "Product managers review usage analytics every sprint.",
        "Beta features are disabled by default and can be enabled per workspace.",
        "Documentation is versioned alongside the product source code.",
        "Accessibility reviews are part of the definition of done for new screens.",
        "Mobile clients receive updates through the public app stores.",
        "Service level agreements are defined in each customer contract.",
    ],
}

FILLER_WORDS = ["notes", "review", "update", "summary", "details", "context", "records", "overview"]


class QuestionDraft(BaseModel):
    """A question plus the evidence the generator must place."""

    qtype: QuestionType
    text: str
    answer: str
    aliases: List[str] = Field(default_factory=list)
    category: Optional[ChunkCategory] = None
    chunk_sentences: List[str] = Field(default_factory=list)
    tool: Optional[GoldTool] = None
    evidence: Optional[str] = None
    evidence_span: Optional[str] = None

    @property
    def supporting_spans(self) -> List[str]:
        spans = list(self.chunk_sentences)
        if self.evidence_span:
            spans.append(self.evidence_span)
        return spans


class _Pools:
    """Shuffled entity pools so names and years are never reused."""

    def __init__(self, rng: np.random.Generator):
        self.people = [PEOPLE[i] for i in rng.permutation(len(PEOPLE))]
        self.years = [int(y) for y in rng.permutation(np.arange(2008, 2024))]
        self.used_tool_args: Set[Tuple[str, Tuple[Tuple[str, Any], ...]]] = set()

    def person(self) -> str:
        return self.people.pop()

    def join_year(self) -> int:
        return self.years.pop()


def _pick(rng: np.random.Generator, values: List[Any]) -> Any:
    return values[int(rng.integers(len(values)))]


def _tool_draft(
    pools: _Pools,
    qtype: QuestionType,
    text: str,
    answer: str,
    aliases: List[str],
    tool_name: str,
    arguments: Dict[str, Any],
    span: str,
    category: Optional[ChunkCategory] = None,
    chunk_sentences: Optional[List[str]] = None,
) -> Optional[QuestionDraft]:
    key = (tool_name, tuple(sorted(arguments.items())))
    if key in pools.used_tool_args:
        return None
    pools.used_tool_args.add(key)
    rendered_args = ", ".join(f"{k}={v}" for k, v in arguments.items())
    return QuestionDraft(
        qtype=qtype,
        text=text,
        answer=answer,
        aliases=aliases,
        category=category,
        chunk_sentences=chunk_sentences or [],
        tool=GoldTool(name=tool_name, arguments=arguments),
        evidence=f"{tool_name}({rendered_args}): {span}",
        evidence_span=span,
    )


def _fill(rng: np.random.Generator, count: int, make) -> List[QuestionDraft]:
    drafts: List[QuestionDraft] = []
    attempts = 0
    while len(drafts) < count:
        attempts += 1
        if attempts > count * 200:
            raise RuntimeError("content tables too small for the requested question count")
        draft = make(rng)
        if draft is not None:
            drafts.append(draft)
    return drafts


def draft_doc_questions(rng: np.random.Generator, pools: _Pools) -> List[QuestionDraft]:
    """Single-hop questions answered by one corpus sentence."""
    drafts: List[QuestionDraft] = []

    for index in rng.permutation(len(POLICY_FACTS))[:7]:
        policy, attribute, unit, low, high, step = POLICY_FACTS[int(index)]
        value = low + step * int(rng.integers(0, (high - low) // step + 1))
        answer = f"{value} {unit}"
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"Under the {policy} policy, what is the {attribute}?",
                answer=answer,
                aliases=[str(value)],
                category=ChunkCategory.POLICY,
                chunk_sentences=[f"Under the {policy} policy, the {attribute} is {answer}."],
            )
        )

    seen_spend: Set[Tuple[str, str, int]] = set()
    while len(seen_spend) < 6:
        label = _pick(rng, SPEND_LABELS)
        quarter = _pick(rng, ["Q1", "Q2", "Q3", "Q4"])
        year = int(rng.integers(2022, 2025))
        if (label, quarter, year) in seen_spend:
            continue
        seen_spend.add((label, quarter, year))
        amount = f"{rng.uniform(5, 95):.1f}"
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"How much {label} did NovaTech report for {quarter} {year}?",
                answer=f"{amount} million euros",
                aliases=[f"{amount} million", f"EUR {amount} million"],
                category=ChunkCategory.FINANCIAL,
                chunk_sentences=[
                    f"In {quarter} {year}, NovaTech reported {label} of {amount} million euros."
                ],
            )
        )

    offices = [OFFICES[i] for i in rng.permutation(len(OFFICES))[:2]]
    for office in offices:
        person = pools.person()
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"Who is the office manager in {OFFICE_NAMES[office]}?",
                answer=person,
                aliases=[person.split()[-1]],
                category=ChunkCategory.ORG,
                chunk_sentences=[f"{person} is the office manager in {OFFICE_NAMES[office]}."],
            )
        )
    for _ in range(2):
        person, year = pools.person(), pools.join_year()
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"In which year did {person} join NovaTech?",
                answer=str(year),
                aliases=[f"in {year}"],
                category=ChunkCategory.ORG,
                chunk_sentences=[f"{person} joined NovaTech in {year}."],
            )
        )
    for department in [DEPARTMENTS[i] for i in rng.permutation(len(DEPARTMENTS))[:2]]:
        floor = int(rng.integers(2, 15))
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"Which floor of the headquarters does the {department} department sit on?",
                answer=f"floor {floor}",
                aliases=[str(floor)],
                category=ChunkCategory.ORG,
                chunk_sentences=[
                    f"The {department} department sits on floor {floor} of the headquarters."
                ],
            )
        )

    products = [PRODUCTS[i] for i in rng.permutation(len(PRODUCTS))]
    for product in products[:2]:
        sessions = 50 + 25 * int(rng.integers(0, 19))
        name = PRODUCT_NAMES[product]
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"How many concurrent sessions per workspace does {name} support?",
                answer=str(sessions),
                aliases=[f"{sessions} sessions", f"up to {sessions}"],
                category=ChunkCategory.PRODUCT,
                chunk_sentences=[f"{name} supports up to {sessions} concurrent sessions per workspace."],
            )
        )
    for product in products[2:4]:
        name = PRODUCT_NAMES[product]
        version = f"{int(rng.integers(2, 9))}.{int(rng.integers(0, 10))}"
        month = MONTH_NAMES[_pick(rng, MONTHS)]
        year = int(rng.integers(2019, 2025))
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"When was {name} version {version} released?",
                answer=f"{month} {year}",
                aliases=[f"in {month} {year}"],
                category=ChunkCategory.PRODUCT,
                chunk_sentences=[f"{name} version {version} was released in {month} {year}."],
            )
        )
    for product in products[4:] + products[:1]:
        name = PRODUCT_NAMES[product]
        days = 7 * int(rng.integers(2, 14))
        drafts.append(
            QuestionDraft(
                qtype=QuestionType.SINGLE_HOP_DOC,
                text=f"For how many days does {name} keep backups?",
                answer=f"{days} days",
                aliases=[str(days)],
                category=ChunkCategory.PRODUCT,
                chunk_sentences=[f"{name} keeps backups for {days} days."],
            )
        )
    return drafts


def draft_multi_hop_questions(rng: np.random.Generator, pools: _Pools) -> List[QuestionDraft]:
    """Questions that need a corpus sentence to pick the right tool arguments."""
    drafts: List[QuestionDraft] = []

    departments = [DEPARTMENTS[i] for i in rng.permutation(len(DEPARTMENTS))]
    for position, department in enumerate(departments[:7]):
        person = pools.person()
        headcount = int(rng.integers(12, 240))
        lead = f"The {department} department is led by {person}."
        if position < 3:
            year = pools.join_year()
            sentences = [f"{person} joined NovaTech in {year}.", lead]
            text = (
                "How many active employees work in the department led by the person "
                f"who joined NovaTech in {year}?"
            )
        else:
            sentences = [lead]
            text = f"How many active employees work in the department led by {person}?"
        drafts.append(
            _tool_draft(
                pools,
                QuestionType.MULTI_HOP,
                text,
                f"{headcount} employees",
                [str(headcount)],
                "query_employees",
                {"department": department},
                f"{department} department has {headcount} active employees",
                category=ChunkCategory.ORG,
                chunk_sentences=sentences,
            )
        )

    for product in [PRODUCTS[i] for i in rng.permutation(len(PRODUCTS))]:
        warehouse = _pick(rng, OFFICES)
        units = int(rng.integers(40, 2000))
        name = PRODUCT_NAMES[product]
        drafts.append(
            _tool_draft(
                pools,
                QuestionType.MULTI_HOP,
                f"How many units of {name} are in stock at its primary warehouse?",
                f"{units} units",
                [str(units)],
                "get_inventory",
                {"product_line": product, "warehouse": warehouse},
                f"{name} stock in {OFFICE_NAMES[warehouse]} is {units} units",
                category=ChunkCategory.PRODUCT,
                chunk_sentences=[
                    f"{name} is stocked primarily in the {OFFICE_NAMES[warehouse]} warehouse."
                ],
            )
        )

    for department in [DEPARTMENTS[i] for i in rng.permutation(len(DEPARTMENTS))]:
        quarter = _pick(rng, ["Q1", "Q2", "Q3", "Q4"])
        year = int(rng.integers(2022, 2025))
        variance = f"{rng.uniform(2, 25):.1f}"
        drafts.append(
            _tool_draft(
                pools,
                QuestionType.MULTI_HOP,
                f"By what percentage did the {department} cost center exceed its budget "
                "in the quarter it was flagged for review?",
                f"{variance} percent",
                [f"{variance}%", variance],
                "compute_budget_variance",
                {"cost_center": department, "quarter": quarter, "year": year},
                f"{department} spend in {quarter} {year} was {variance} percent over budget",
                category=ChunkCategory.FINANCIAL,
                chunk_sentences=[
                    f"The {department} cost center was flagged for review in {quarter} {year}."
                ],
            )
        )
    return drafts


def draft_db_questions(rng: np.random.Generator, pools: _Pools) -> List[QuestionDraft]:
    """Single-hop questions answered by a database tool."""

    def finance(rng):
        metric = _pick(rng, FINANCE_METRICS)
        quarter = _pick(rng, ["Q1", "Q2", "Q3", "Q4"])
        year = int(rng.integers(2022, 2025))
        amount = f"{rng.uniform(3, 450):.1f}"
        label = metric.replace("_", " ")
        return _tool_draft(
            pools,
            QuestionType.SINGLE_HOP_DB,
            f"According to the finance system, what was NovaTech's {label} for {quarter} {year}?",
            f"{amount} million USD",
            [f"{amount} million", f"${amount} million"],
            "financial_report",
            {"quarter": quarter, "year": year, "metric": metric},
            f"{label} for {quarter} {year} was {amount} million USD",
        )

    def tickets(rng):
        product, month = _pick(rng, PRODUCTS), _pick(rng, MONTHS)
        count = int(rng.integers(20, 900))
        name = PRODUCT_NAMES[product]
        return _tool_draft(
            pools,
            QuestionType.SINGLE_HOP_DB,
            f"How many support tickets did {name} receive in {MONTH_NAMES[month]}?",
            f"{count} tickets",
            [str(count)],
            "get_ticket_stats",
            {"product": product, "month": month},
            f"{name} received {count} support tickets in {MONTH_NAMES[month]}",
        )

    def pipeline(rng):
        region = _pick(rng, REGIONS)
        stage = _pick(rng, ["prospect", "qualified", "proposal", "negotiation", "closed_won"])
        value = f"{rng.uniform(0.5, 30):.1f}"
        stage_label = stage.replace("_", " ")
        return _tool_draft(
            pools,
            QuestionType.SINGLE_HOP_DB,
            f"What is the open sales pipeline value in {REGION_NAMES[region]} "
            f"at the {stage_label} stage?",
            f"{value} million USD",
            [f"{value} million"],
            "get_sales_pipeline",
            {"region": region, "stage": stage},
            f"open pipeline in {REGION_NAMES[region]} at {stage_label} stage is {value} million USD",
        )

    def assets(rng):
        office = _pick(rng, OFFICES)
        category = _pick(rng, ["laptop", "monitor", "phone", "server", "license"])
        count = int(rng.integers(5, 400))
        return _tool_draft(
            pools,
            QuestionType.SINGLE_HOP_DB,
            f"How many {category} assets are in use at the {OFFICE_NAMES[office]} office?",
            str(count),
            [f"{count} assets"],
            "query_assets",
            {"office": office, "category": category},
            f"{OFFICE_NAMES[office]} office has {count} {category} assets in use",
        )

    def customers(rng):
        tier = _pick(rng, TIERS)
        count = int(rng.integers(10, 900))
        label = tier.replace("_", " ")
        return _tool_draft(
            pools,
            QuestionType.SINGLE_HOP_DB,
            f"How many active {label} customer accounts does NovaTech have?",
            f"{count} accounts",
            [str(count)],
            "list_customers",
            {"tier": tier},
            f"{label} tier has {count} active customer accounts",
        )

    def projects(rng):
        team = _pick(rng, TEAMS)
        count = int(rng.integers(2, 30))
        return _tool_draft(
            pools,
            QuestionType.SINGLE_HOP_DB,
            f"How many projects does the {team} team currently own?",
            f"{count} projects",
            [str(count)],
            "query_projects",
            {"team": team},
            f"the {team} team owns {count} projects",
        )

    return (
        _fill(rng, 7, finance)
        + _fill(rng, 5, tickets)
        + _fill(rng, 5, pipeline)
        + _fill(rng, 4, assets)
        + _fill(rng, 2, customers)
        + _fill(rng, 2, projects)
    )


def draft_tool_questions(rng: np.random.Generator, pools: _Pools) -> List[QuestionDraft]:
    """Questions that need a computation tool."""

    def metrics(rng):
        metric = _pick(rng, list(COMPANY_METRICS))
        period = _pick(rng, ["monthly", "quarterly", "annual"])
        label, unit, low, high = COMPANY_METRICS[metric]
        value = f"{rng.uniform(low, high):.1f}"
        return _tool_draft(
            pools,
            QuestionType.TOOL_REQUIRING,
            f"What is NovaTech's {period} {label}?",
            f"{value} {unit}",
            [value],
            "calculate_metrics",
            {"metric": metric, "period": period},
            f"{period} {label} is {value} {unit}",
        )

    def currency(rng):
        amount = _pick(rng, [100, 250, 500, 1200, 5000, 10000])
        source, target = (str(c) for c in rng.choice(list(CURRENCY_RATES), size=2, replace=False))
        converted = f"{amount * CURRENCY_RATES[source] / CURRENCY_RATES[target]:.2f}"
        return _tool_draft(
            pools,
            QuestionType.TOOL_REQUIRING,
            f"How much is {amount} {source} in {target}?",
            f"{converted} {target}",
            [converted],
            "convert_currency",
            {"amount": amount, "from_currency": source, "to_currency": target},
            f"{amount} {source} equals {converted} {target}",
        )

    def forecast(rng):
        product = _pick(rng, PRODUCTS)
        horizon = int(rng.integers(1, 5))
        value = f"{rng.uniform(10, 250):.1f}"
        name = PRODUCT_NAMES[product]
        return _tool_draft(
            pools,
            QuestionType.TOOL_REQUIRING,
            f"What revenue does the forecast project for {name} over the next {horizon} quarters?",
            f"{value} million euros",
            [f"{value} million"],
            "forecast_revenue",
            {"product_line": product, "horizon_quarters": horizon},
            f"{name} revenue over {horizon} quarters is projected at {value} million euros",
        )

    def headcount(rng):
        level = _pick(rng, ["junior", "mid", "senior", "staff", "principal"])
        count = int(rng.integers(2, 25))
        cost = count * (60000 + 1000 * int(rng.integers(0, 90)))
        return _tool_draft(
            pools,
            QuestionType.TOOL_REQUIRING,
            f"What is the fully loaded annual cost of hiring {count} {level} employees?",
            f"{cost} euros",
            [str(cost)],
            "estimate_headcount_cost",
            {"role_level": level, "count": count},
            f"{count} {level} hires cost {cost} euros per year",
        )

    def sla(rng):
        service, month = _pick(rng, SERVICES), _pick(rng, MONTHS)
        value = f"{rng.uniform(97.0, 99.99):.2f}"
        return _tool_draft(
            pools,
            QuestionType.TOOL_REQUIRING,
            f"What SLA compliance did the {SERVICE_NAMES[service]} service achieve "
            f"in {MONTH_NAMES[month]}?",
            f"{value} percent",
            [f"{value}%"],
            "calculate_sla_compliance",
            {"service": service, "month": month},
            f"{SERVICE_NAMES[service]} compliance in {MONTH_NAMES[month]} was {value} percent",
        )

    return (
        _fill(rng, 4, metrics)
        + _fill(rng, 4, currency)
        + _fill(rng, 4, forecast)
        + _fill(rng, 4, headcount)
        + _fill(rng, 4, sla)
    )


def draft_unanswerable_questions(rng: np.random.Generator) -> List[QuestionDraft]:
    """Questions about entities the corpus and tools never mention."""
    picks = sorted(int(i) for i in rng.permutation(len(UNANSWERABLE_QUESTIONS))[:10])
    return [
        QuestionDraft(
            qtype=QuestionType.UNANSWERABLE,
            text=UNANSWERABLE_QUESTIONS[i],
            answer=NOT_ANSWERABLE,
            aliases=list(UNANSWERABLE_ALIASES),
        )
        for i in picks
    ]


def draft_all_questions(rng: np.random.Generator) -> Dict[QuestionType, List[QuestionDraft]]:
    """Draft the full 25/25/20/20/10 question set."""
    pools = _Pools(rng)
    return {
        QuestionType.SINGLE_HOP_DOC: draft_doc_questions(rng, pools),
        QuestionType.SINGLE_HOP_DB: draft_db_questions(rng, pools),
        QuestionType.MULTI_HOP: draft_multi_hop_questions(rng, pools),
        QuestionType.TOOL_REQUIRING: draft_tool_questions(rng, pools),
        QuestionType.UNANSWERABLE: draft_unanswerable_questions(rng),
    }
