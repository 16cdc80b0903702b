"""Shared builders for the test suite."""

from __future__ import annotations

from webskill.dsl.nodes import Action, PRIMITIVE_KIND, SKILL_KIND
from webskill.llm.backend import Backend, ChatRequest, ChatResponse, ScriptedBackend
from webskill.llm.replay import ReplayEntry
from webskill.sim.spec import load_site_spec


def act(name: str, *args) -> Action:
    return Action(name, tuple(args), PRIMITIVE_KIND)


def skill_act(name: str, *args) -> Action:
    return Action(name, tuple(args), SKILL_KIND)


def policy_text(thought: str, action_line: str) -> str:
    """A policy response in the fenced-block output format."""
    return f"{thought}\n\n```\n{action_line}\n```"


def scripted(by_role: dict) -> ScriptedBackend:
    """Build a scripted backend from {role: [response, ...]}."""
    entries = [
        ReplayEntry(role, i, text)
        for role, texts in by_role.items()
        for i, text in enumerate(texts)
    ]
    return ScriptedBackend(entries)


class PromptCapturingBackend:
    """Wrapper that keeps every prompt sent through it, by role."""

    def __init__(self, inner: Backend):
        self.inner = inner
        self.backend_id = inner.backend_id
        self.prompts: dict = {}

    def complete(self, request: ChatRequest) -> ChatResponse:
        self.prompts.setdefault(request.role, []).append(request.prompt)
        return self.inner.complete(request)


def demo_site_doc() -> dict:
    """A compact site exercising every effect kind and element role family."""
    return {
        "site_id": "demo",
        "start_url": "/home",
        "data_tables": {
            "items": [
                {"name": "Alpha Lamp", "price": 19.0, "category": "lighting"},
                {"name": "Beta Lamp", "price": 7.5, "category": "lighting"},
                {"name": "Gamma Chair", "price": 45.0, "category": "furniture"},
            ]
        },
        "pages": [
            {
                "url": "/home",
                "title": "Demo Home",
                "elements": [
                    {"bid": "10", "role": "textbox", "name": "Search"},
                    {"bid": "11", "role": "button", "name": "Go"},
                    {"bid": "12", "role": "link", "name": "Catalog"},
                    {"bid": "13", "role": "button", "name": "Promo"},
                    {"bid": "14", "role": "statictext", "name": "Welcome", "value": "hello"},
                ],
                "rules": [
                    {
                        "on": {"action": "click", "bid": "11"},
                        "do": [
                            {
                                "emit_results": {
                                    "table": "items",
                                    "filter_field": "name",
                                    "filter_value_from": "10",
                                    "sort_field": "price",
                                    "ascending": True,
                                    "template": "{name} - ${price:.2f}",
                                }
                            },
                            {"goto": "/results"},
                        ],
                    },
                    {"on": {"action": "click", "bid": "12"}, "do": [{"goto": "/catalog"}]},
                    {"on": {"action": "click", "bid": "13"}, "do": [{"open_popup": "promo"}]},
                ],
            },
            {
                "url": "/results",
                "title": "Search Results",
                "elements": [{"bid": "20", "role": "link", "name": "Home"}],
                "results_panel": {"bid_base": 900},
                "rules": [{"on": {"action": "click", "bid": "20"}, "do": [{"goto": "/home"}]}],
            },
            {
                "url": "/catalog",
                "title": "Catalog",
                "elements": [
                    {
                        "bid": "30",
                        "role": "combobox",
                        "name": "Sort",
                        "value": "Relevance",
                        "options": ["Relevance", "Price"],
                    },
                    {"bid": "31", "role": "button", "name": "Save note"},
                    {"bid": "32", "role": "textbox", "name": "Note"},
                    {"bid": "33", "role": "link", "name": "Home"},
                ],
                "dynamic_query": {
                    "table": "items",
                    "filter_field": "category",
                    "filter_value": "lighting",
                    "sort_from_bid": "30",
                    "sort_fields": {"Price": "price"},
                    "template": "{name}",
                    "bid_base": 700,
                },
                "rules": [
                    {
                        "on": {"action": "click", "bid": "31"},
                        "do": [
                            {"set_flag": {"name": "note", "from": "32"}},
                            {"append_flag": {"name": "saved", "from": "32"}},
                        ],
                    },
                    {"on": {"action": "click", "bid": "33"}, "do": [{"goto": "/home"}]},
                ],
            },
        ],
        "popups": [
            {
                "popup_id": "promo",
                "title": "Special Offer",
                "elements": [
                    {"bid": "90", "role": "button", "name": "Dismiss"},
                    {"bid": "91", "role": "textbox", "name": "Email"},
                    {"bid": "92", "role": "button", "name": "Join"},
                    {"bid": "14", "role": "statictext", "name": "Banner", "value": "sale"},
                ],
                "rules": [
                    {"on": {"action": "click", "bid": "90"}, "do": [{"close_popup": {}}]},
                    {
                        "on": {"action": "click", "bid": "92"},
                        "do": [
                            {"set_flag": {"name": "newsletter", "from": "91"}},
                            {"close_popup": {}},
                        ],
                    },
                ],
            }
        ],
    }


def demo_site():
    return load_site_spec(demo_site_doc())


def demo_tasks() -> list:
    return [
        {
            "task_id": "d1",
            "site_id": "demo",
            "query": "Find the cheapest lamp and tell me its name.",
            "max_steps": 8,
            "checkpoints": [
                {
                    "id": "named",
                    "predicate": "message_contains",
                    "substrings": ["Beta Lamp"],
                }
            ],
        },
        {
            "task_id": "d2",
            "site_id": "demo",
            "query": "Which lamp costs the least? Tell me its name.",
            "max_steps": 8,
            "checkpoints": [
                {
                    "id": "named",
                    "predicate": "message_contains",
                    "substrings": ["Beta Lamp"],
                }
            ],
        },
    ]
