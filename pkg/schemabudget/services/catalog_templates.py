"""
Tool templates for the NovaTech catalog and frontier catalogs.

Templates are function-calling schemas. Enum parameters list their base
values; the catalog builder extends them with qualified values and appends
documentation to the description.
"""

from typing import Any, Dict, List

DEPARTMENTS = ["engineering", "sales", "marketing", "finance", "operations", "legal", "support", "research"]
OFFICES = ["berlin", "austin", "singapore", "toronto", "lagos"]
PRODUCTS = ["nova_cloud", "nova_edge", "nova_sense", "nova_pay", "nova_desk"]
TEAMS = ["platform", "mobile", "data", "security", "infrastructure", "payments"]
QUARTERS = ["Q1", "Q2", "Q3", "Q4"]
MONTHS = [
    "january", "february", "march", "april", "may", "june",
    "july", "august", "september", "october", "november", "december",
]
REGIONS = ["north_america", "europe", "asia_pacific", "latin_america", "africa"]
TIERS = ["enterprise", "business", "startup", "public_sector"]
CURRENCIES = ["USD", "EUR", "GBP", "JPY", "CAD", "SGD"]
SERVICES = ["api_gateway", "billing", "auth", "search", "storage"]
ROLE_LEVELS = ["junior", "mid", "senior", "staff", "principal"]

# Suffixes for extended enum values, e.g. "engineering_emea".
QUALIFIERS = [
    "north", "south", "east", "west", "central", "emea", "apac", "latam",
    "core", "labs", "edge", "retail", "partner", "internal", "legacy", "pilot",
    "beta", "global", "local", "shared", "premium", "standard", "archive", "sandbox",
]

# Documentation sentences appended to JSON descriptions; never the first sentence.
DOC_SENTENCES = [
    "Results are returned as a JSON object with a records array and a next_cursor field.",
    "Pagination is handled automatically when the result set exceeds the configured limit.",
    "All timestamps are expressed in UTC using the ISO 8601 format.",
    "Requests are authorized against the caller's role and department scopes.",
    "Responses are cached for five minutes unless the caller disables caching.",
    "Every call is written to the audit log with the caller identity and arguments.",
    "Omitting an optional filter includes every matching record.",
    "Unknown enum values are rejected with a validation error before execution.",
    "The call is idempotent and safe to retry after a network failure.",
    "Rate limits apply per workspace and are reported in the response headers.",
    "Monetary amounts are reported in the requested currency with two decimals.",
    "Deleted or archived records are excluded unless explicitly requested.",
    "Use the narrowest filters available to keep responses small.",
    "Field names in the response follow the snake_case convention.",
    "Errors are returned in-band with a machine-readable code and a message.",
    "Large exports are streamed in pages of at most two hundred records.",
]

# Words used to top up descriptions; at most six characters each.
KEYWORDS = [
    "audit", "report", "export", "lookup", "query", "sync", "record", "office",
    "team", "budget", "sales", "ops", "data", "api", "admin", "region",
    "stock", "ticket", "policy", "intake",
]


def _enum(values: List[str], **extra: Any) -> Dict[str, Any]:
    return {"type": "string", "enum": list(values), **extra}


def _scalar(kind: str, **extra: Any) -> Dict[str, Any]:
    return {"type": kind, **extra}


def _array(item_kind: str, **extra: Any) -> Dict[str, Any]:
    return {"type": "array", "items": {"type": item_kind}, **extra}


def _tool(
    name: str, category: str, description: str, properties: Dict[str, Any], required: List[str]
) -> Dict[str, Any]:
    return {
        "name": name,
        "category": category,
        "description": description,
        "parameters": {"type": "object", "properties": properties, "required": required},
    }


TOOL_TEMPLATES: List[Dict[str, Any]] = [
    # database
    _tool(
        "query_employees", "database", "Query employee records by department and status.",
        {
            "department": _enum(DEPARTMENTS),
            "status": _enum(["active", "on_leave", "contractor", "terminated"], default="active"),
            "location": _enum(OFFICES),
            "hired_after": _scalar("string"),
            "fields": _array("string"),
            "limit": _scalar("integer", default=50),
        },
        ["department"],
    ),
    _tool(
        "financial_report", "database", "Fetch a financial report for a quarter and metric.",
        {
            "quarter": _enum(QUARTERS),
            "year": _scalar("integer"),
            "metric": _enum(["revenue", "operating_cost", "gross_margin", "net_income", "ebitda", "cash_flow"]),
            "currency": _enum(["USD", "EUR", "GBP", "JPY"], default="USD"),
            "include_forecast": _scalar("boolean", default=False),
        },
        ["quarter", "year", "metric"],
    ),
    _tool(
        "get_inventory", "database", "Look up stock levels for a product line and warehouse.",
        {
            "product_line": _enum(PRODUCTS),
            "warehouse": _enum(OFFICES),
            "sku": _scalar("string"),
            "min_quantity": _scalar("integer", default=0),
            "include_reserved": _scalar("boolean", default=False),
        },
        ["product_line", "warehouse"],
    ),
    _tool(
        "list_customers", "database", "List customer accounts filtered by tier and region.",
        {
            "tier": _enum(TIERS),
            "region": _enum(REGIONS),
            "active_only": _scalar("boolean", default=True),
            "sort_by": _enum(["name", "revenue", "signup_date"], default="name"),
            "limit": _scalar("integer", default=25),
        },
        ["tier"],
    ),
    _tool(
        "get_ticket_stats", "database", "Summarize support ticket volume for a product and month.",
        {
            "product": _enum(PRODUCTS),
            "month": _enum(MONTHS),
            "severity": _enum(["low", "medium", "high", "critical"]),
            "channel": _enum(["email", "chat", "phone", "portal"]),
            "include_closed": _scalar("boolean", default=True),
        },
        ["product", "month"],
    ),
    _tool(
        "query_projects", "database", "Search engineering projects by owner team and phase.",
        {
            "team": _enum(TEAMS),
            "phase": _enum(["discovery", "build", "beta", "launched", "sunset"]),
            "budget_min": _scalar("number"),
            "tags": _array("string"),
            "limit": _scalar("integer", default=20),
        },
        ["team"],
    ),
    _tool(
        "get_sales_pipeline", "database", "Report open sales pipeline value by region and stage.",
        {
            "region": _enum(REGIONS),
            "stage": _enum(["prospect", "qualified", "proposal", "negotiation", "closed_won"]),
            "owner": _scalar("string"),
            "quarter": _enum(QUARTERS),
            "min_value": _scalar("number"),
        },
        ["region", "stage"],
    ),
    _tool(
        "query_assets", "database", "List IT assets assigned to an office and category.",
        {
            "office": _enum(OFFICES),
            "category": _enum(["laptop", "monitor", "phone", "server", "license"]),
            "assigned_to": _scalar("string"),
            "status": _enum(["in_use", "spare", "repair", "retired"], default="in_use"),
        },
        ["office", "category"],
    ),
    # document
    _tool(
        "search_knowledge_base", "document", "Search the internal knowledge base for matching articles.",
        {
            "query": _scalar("string"),
            "collection": _enum(["policies", "finance", "org", "product"]),
            "max_results": _scalar("integer", default=5),
            "filters": {
                "type": "object",
                "properties": {
                    "author": _scalar("string"),
                    "updated_after": _scalar("string"),
                    "visibility": _enum(["public", "internal", "restricted"]),
                },
            },
            "language": _enum(["en", "de", "es", "ja"], default="en"),
        },
        ["query"],
    ),
    _tool(
        "get_document", "document", "Retrieve a document by identifier and revision.",
        {
            "doc_id": _scalar("string"),
            "revision": _scalar("integer"),
            "format": _enum(["markdown", "html", "pdf", "plain"], default="markdown"),
            "include_comments": _scalar("boolean", default=False),
            "audience": _enum(["staff", "managers", "partners", "public"]),
        },
        ["doc_id"],
    ),
    _tool(
        "list_policies", "document", "List company policies by category and effective year.",
        {
            "category": _enum(["hr", "security", "travel", "finance", "it", "legal"]),
            "effective_year": _scalar("integer"),
            "status": _enum(["draft", "active", "archived"], default="active"),
            "owner_team": _scalar("string"),
        },
        ["category"],
    ),
    _tool(
        "get_org_chart", "document", "Return the reporting chain for a department or person.",
        {
            "department": _enum(DEPARTMENTS),
            "person": _scalar("string"),
            "depth": _scalar("integer", default=2),
            "include_vacancies": _scalar("boolean", default=False),
        },
        [],
    ),
    _tool(
        "search_product_docs", "document", "Search product documentation for a feature or release.",
        {
            "product": _enum(PRODUCTS),
            "topic": _scalar("string"),
            "version": _scalar("string"),
            "doc_type": _enum(["guide", "reference", "release_notes", "faq"], default="guide"),
        },
        ["product", "topic"],
    ),
    _tool(
        "get_meeting_notes", "document", "Fetch meeting notes for a team within a date range.",
        {
            "team": _enum(TEAMS),
            "start_date": _scalar("string"),
            "end_date": _scalar("string"),
            "format": _enum(["summary", "full", "action_items"], default="summary"),
        },
        ["team", "start_date"],
    ),
    _tool(
        "fetch_contract", "document", "Retrieve a customer contract and its key terms.",
        {
            "customer_id": _scalar("string"),
            "section": _enum(["pricing", "sla", "termination", "renewal", "liability"]),
            "include_amendments": _scalar("boolean", default=True),
            "format": _enum(["pdf", "text", "summary"], default="text"),
        },
        ["customer_id"],
    ),
    # computation
    _tool(
        "calculate_metrics", "computation", "Compute a business metric over a reporting period.",
        {
            "metric": _enum(["churn_rate", "arpu", "ltv", "cac", "nps", "burn_rate"]),
            "period": _enum(["monthly", "quarterly", "annual"]),
            "segment": _enum(TIERS),
            "year": _scalar("integer"),
            "precision": _scalar("integer", default=2),
        },
        ["metric", "period"],
    ),
    _tool(
        "convert_currency", "computation", "Convert an amount between two supported currencies.",
        {
            "amount": _scalar("number"),
            "from_currency": _enum(CURRENCIES),
            "to_currency": _enum(CURRENCIES),
            "rate_date": _scalar("string"),
        },
        ["amount", "from_currency", "to_currency"],
    ),
    _tool(
        "forecast_revenue", "computation", "Project revenue for future quarters from history.",
        {
            "product_line": _enum(PRODUCTS),
            "horizon_quarters": _scalar("integer"),
            "model": _enum(["linear", "seasonal", "arima"], default="seasonal"),
            "confidence": _scalar("number", default=0.9),
            "scenarios": _array("string"),
        },
        ["product_line", "horizon_quarters"],
    ),
    _tool(
        "compute_budget_variance", "computation", "Compare actual spend against budget for a cost center.",
        {
            "cost_center": _enum(DEPARTMENTS),
            "quarter": _enum(QUARTERS),
            "year": _scalar("integer"),
            "threshold_pct": _scalar("number", default=5),
        },
        ["cost_center", "quarter", "year"],
    ),
    _tool(
        "estimate_headcount_cost", "computation", "Estimate fully loaded cost for planned hires.",
        {
            "role_level": _enum(ROLE_LEVELS),
            "count": _scalar("integer"),
            "location": _enum(OFFICES),
            "benefits_rate": _scalar("number", default=0.25),
        },
        ["role_level", "count"],
    ),
    _tool(
        "calculate_sla_compliance", "computation", "Measure SLA compliance for a service and month.",
        {
            "service": _enum(SERVICES),
            "month": _enum(MONTHS),
            "target_pct": _scalar("number", default=99.9),
            "exclude_maintenance": _scalar("boolean", default=True),
        },
        ["service", "month"],
    ),
    _tool(
        "score_lead", "computation", "Score a sales lead using firmographic attributes.",
        {
            "company_size": _enum(["small", "medium", "large", "enterprise"]),
            "industry": _enum(["fintech", "healthcare", "retail", "manufacturing", "education", "government"]),
            "engagement_score": _scalar("integer"),
            "source": _enum(["web", "event", "referral", "partner", "outbound"]),
        },
        ["company_size"],
    ),
    # communication
    _tool(
        "send_email", "communication", "Send an email to an employee or distribution list.",
        {
            "to": _scalar("string"),
            "subject": _scalar("string"),
            "body": _scalar("string"),
            "priority": _enum(["low", "normal", "high", "urgent"], default="normal"),
            "template": _enum(["none", "welcome", "reminder", "escalation", "digest"], default="none"),
            "cc": _array("string"),
        },
        ["to", "subject", "body"],
    ),
    _tool(
        "post_slack_message", "communication", "Post a message to a team chat channel.",
        {
            "channel": _enum(["general", "engineering", "sales", "support", "leadership", "random"]),
            "text": _scalar("string"),
            "thread_id": _scalar("string"),
            "notify": _enum(["none", "here", "channel"], default="none"),
        },
        ["channel", "text"],
    ),
    _tool(
        "create_ticket", "communication", "Open a support ticket for a product issue.",
        {
            "product": _enum(PRODUCTS),
            "severity": _enum(["low", "medium", "high", "critical"]),
            "title": _scalar("string"),
            "description": _scalar("string"),
            "assignee": _scalar("string"),
            "labels": _array("string"),
        },
        ["product", "severity", "title"],
    ),
    _tool(
        "schedule_meeting", "communication", "Schedule a meeting with attendees and a time slot.",
        {
            "attendees": _array("string"),
            "start_time": _scalar("string"),
            "duration_minutes": _scalar("integer", default=30),
            "room": _enum(["aurora", "borealis", "cascade", "delta", "ember"]),
            "recurrence": _enum(["none", "daily", "weekly", "monthly"], default="none"),
        },
        ["attendees", "start_time"],
    ),
    _tool(
        "send_sms_alert", "communication", "Send an SMS alert to the on-call rotation.",
        {
            "rotation": _enum(["platform", "payments", "security", "data"]),
            "message": _scalar("string"),
            "urgency": _enum(["info", "warning", "critical"], default="warning"),
            "dedupe_key": _scalar("string"),
            "locale": _enum(["en", "de", "fr", "es"], default="en"),
        },
        ["rotation", "message"],
    ),
    _tool(
        "publish_announcement", "communication", "Publish a company announcement to an audience.",
        {
            "audience": _enum(["all_staff", "managers", "engineering", "sales", "contractors"]),
            "title": _scalar("string"),
            "body": _scalar("string"),
            "pin": _scalar("boolean", default=False),
            "channel": _enum(["intranet", "email", "chat"], default="intranet"),
            "expires_at": _scalar("string"),
        },
        ["audience", "title", "body"],
    ),
]
