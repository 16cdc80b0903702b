"""Declarative site specifications and their validating loader.

A site is a JSON document: pages with elements and transition rules, plus
named data tables for search and listing pages, plus optional popup dialogs.
The loader resolves and cross-checks every reference so the stepper can
assume a well-formed world.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union


class SimError(Exception):
    """Base class for simulator errors."""


class SchemaError(SimError):
    """Malformed site document; the message carries the field path."""


class DanglingReference(SimError):
    """A rule or query points at a page, table, or popup that does not exist."""


ROLES = frozenset(
    ["link", "button", "textbox", "combobox", "checkbox", "statictext", "image", "option"]
)

# Actions a transition rule may bind. Navigation and tab primitives have
# fixed built-in semantics; noop never matches a rule.
RULE_ACTIONS = frozenset(
    ["click", "hover", "fill", "select_option", "keyboard_press", "scroll"]
)

RESULTS_FLAG = "__results__"


@dataclass(frozen=True)
class ElementSpec:
    bid: str
    role: str
    name: str
    value: Union[str, None] = None
    options: tuple = ()


@dataclass(frozen=True)
class Trigger:
    action: str
    bid: Union[str, None] = None  # None: matches the action anywhere on the page
    value: Union[str, None] = None  # None: matches any value


@dataclass(frozen=True)
class Goto:
    url: str


@dataclass(frozen=True)
class SetValue:
    bid: str
    value: Union[str, None] = None
    from_bid: Union[str, None] = None


@dataclass(frozen=True)
class SetFlag:
    name: str
    value: object = None
    from_bid: Union[str, None] = None


@dataclass(frozen=True)
class OpenPopup:
    popup_id: str


@dataclass(frozen=True)
class ClosePopup:
    pass


@dataclass(frozen=True)
class AppendFlag:
    name: str
    value: object = None
    from_bid: Union[str, None] = None


@dataclass(frozen=True)
class EmitResults:
    table: str
    filter_field: Union[str, None] = None
    filter_value: Union[str, None] = None
    filter_value_from: Union[str, None] = None  # bid whose current value is the query
    filter_value_from_flag: Union[str, None] = None
    sort_field: Union[str, None] = None
    ascending: bool = True
    template: str = "{name}"
    into: str = RESULTS_FLAG


Effect = Union[Goto, SetValue, SetFlag, OpenPopup, ClosePopup, AppendFlag, EmitResults]


@dataclass(frozen=True)
class TransitionRule:
    on: Trigger
    do: tuple


@dataclass(frozen=True)
class ResultsPanel:
    """Renders the current result list as read-only elements on a page."""

    bid_base: int = 900
    role: str = "statictext"
    from_flag: str = RESULTS_FLAG


@dataclass(frozen=True)
class DynamicQuery:
    """A listing recomputed at observe time from a data table.

    The filter text comes from an element's current value, a flag, or a
    literal; the sort field is chosen by mapping a combobox's current value
    through ``sort_fields`` (a '-' prefix sorts descending).
    """

    table: str
    filter_field: Union[str, None] = None
    filter_value: Union[str, None] = None
    filter_from_bid: Union[str, None] = None
    filter_from_flag: Union[str, None] = None
    sort_from_bid: Union[str, None] = None
    sort_from_flag: Union[str, None] = None
    sort_fields: tuple = ()  # (selection value, field) pairs
    template: str = "{name}"
    bid_base: int = 700
    role: str = "statictext"


@dataclass(frozen=True)
class PageSpec:
    url: str
    title: str
    elements: tuple = ()
    rules: tuple = ()
    results_panel: Union[ResultsPanel, None] = None
    dynamic_query: Union[DynamicQuery, None] = None

    def element(self, bid: str) -> Union[ElementSpec, None]:
        for e in self.elements:
            if e.bid == bid:
                return e
        return None


@dataclass(frozen=True)
class PopupSpec:
    popup_id: str
    title: str
    elements: tuple = ()
    rules: tuple = ()

    def element(self, bid: str) -> Union[ElementSpec, None]:
        for e in self.elements:
            if e.bid == bid:
                return e
        return None


@dataclass
class SiteSpec:
    site_id: str
    start_url: str
    pages: dict = field(default_factory=dict)  # url -> PageSpec
    popups: dict = field(default_factory=dict)  # popup_id -> PopupSpec
    data_tables: dict = field(default_factory=dict)  # name -> list of records

    def page(self, url: str) -> Union[PageSpec, None]:
        return self.pages.get(url)


def load_site_spec(source: Union[str, Path, dict]) -> SiteSpec:
    """Load and cross-check a site document (path, JSON text, or dict)."""
    doc = _read_document(source)
    if not isinstance(doc, dict):
        raise SchemaError("document root must be an object")

    site_id = _req_str(doc, "site_id", "site_id")
    start_url = _req_str(doc, "start_url", "start_url")

    tables = doc.get("data_tables", {})
    if not isinstance(tables, dict):
        raise SchemaError("data_tables: must be an object of named record lists")
    for tname, records in tables.items():
        if not isinstance(records, list):
            raise SchemaError(f"data_tables.{tname}: must be a list of records")
        for i, rec in enumerate(records):
            if not isinstance(rec, dict):
                raise SchemaError(f"data_tables.{tname}[{i}]: must be a flat record")

    raw_pages = doc.get("pages")
    if not isinstance(raw_pages, list) or not raw_pages:
        raise SchemaError("pages: must be a non-empty list")

    pages: dict[str, PageSpec] = {}
    for i, raw in enumerate(raw_pages):
        page = _parse_page(raw, f"pages[{i}]")
        if page.url in pages:
            raise SchemaError(f"pages[{i}].url: duplicate url '{page.url}'")
        pages[page.url] = page

    popups: dict[str, PopupSpec] = {}
    for i, raw in enumerate(doc.get("popups", [])):
        popup = _parse_popup(raw, f"popups[{i}]")
        if popup.popup_id in popups:
            raise SchemaError(f"popups[{i}].popup_id: duplicate id '{popup.popup_id}'")
        popups[popup.popup_id] = popup

    site = SiteSpec(site_id, start_url, pages, popups, tables)
    _check_references(site)
    return site


def _read_document(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(source).read_text()
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _req_str(obj: dict, key: str, path: str) -> str:
    v = obj.get(key)
    if not isinstance(v, str) or not v:
        raise SchemaError(f"{path}: required non-empty string")
    return v


def _parse_elements(raw_list, path: str) -> tuple:
    if not isinstance(raw_list, list):
        raise SchemaError(f"{path}: must be a list")
    elements = []
    seen = set()
    for i, raw in enumerate(raw_list):
        p = f"{path}[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{p}: must be an object")
        bid = raw.get("bid")
        if isinstance(bid, int):
            bid = str(bid)
        if not isinstance(bid, str) or not bid:
            raise SchemaError(f"{p}.bid: required non-empty string")
        if bid in seen:
            raise SchemaError(f"{p}.bid: duplicate bid '{bid}'")
        seen.add(bid)
        role = raw.get("role")
        if role not in ROLES:
            raise SchemaError(f"{p}.role: must be one of {sorted(ROLES)}")
        name = raw.get("name", "")
        if not isinstance(name, str):
            raise SchemaError(f"{p}.name: must be a string")
        value = raw.get("value")
        if value is not None and not isinstance(value, str):
            raise SchemaError(f"{p}.value: must be a string")
        options = raw.get("options", [])
        if not isinstance(options, list) or any(not isinstance(o, str) for o in options):
            raise SchemaError(f"{p}.options: must be a list of strings")
        if role == "combobox" and not options:
            raise SchemaError(f"{p}.options: combobox needs at least one option")
        elements.append(ElementSpec(bid, role, name, value, tuple(options)))
    return tuple(elements)


def _parse_rules(raw_list, path: str) -> tuple:
    if not isinstance(raw_list, list):
        raise SchemaError(f"{path}: must be a list")
    rules = []
    for i, raw in enumerate(raw_list):
        p = f"{path}[{i}]"
        if not isinstance(raw, dict) or "on" not in raw or "do" not in raw:
            raise SchemaError(f"{p}: rule needs 'on' and 'do'")
        on = raw["on"]
        if not isinstance(on, dict):
            raise SchemaError(f"{p}.on: must be an object")
        action = on.get("action")
        if action not in RULE_ACTIONS:
            raise SchemaError(f"{p}.on.action: must be one of {sorted(RULE_ACTIONS)}")
        bid = on.get("bid")
        if isinstance(bid, int):
            bid = str(bid)
        if bid is not None and not isinstance(bid, str):
            raise SchemaError(f"{p}.on.bid: must be a string")
        value = on.get("value")
        if value is not None and not isinstance(value, str):
            raise SchemaError(f"{p}.on.value: must be a string")
        do = raw["do"]
        if not isinstance(do, list) or not do:
            raise SchemaError(f"{p}.do: must be a non-empty effect list")
        effects = tuple(_parse_effect(e, f"{p}.do[{j}]") for j, e in enumerate(do))
        rules.append(TransitionRule(Trigger(action, bid, value), effects))
    return tuple(rules)


def _parse_effect(raw, path: str) -> Effect:
    if not isinstance(raw, dict) or len(raw) != 1:
        raise SchemaError(f"{path}: effect must be a single-key object")
    kind, body = next(iter(raw.items()))
    if kind == "goto":
        if not isinstance(body, str):
            raise SchemaError(f"{path}.goto: must be a url string")
        return Goto(body)
    if kind == "set_value":
        bid = _effect_bid(body, path, "set_value")
        return SetValue(bid, body.get("value"), _opt_bid(body.get("from"), path))
    if kind == "set_flag":
        return SetFlag(*_flag_parts(body, path, "set_flag"))
    if kind == "open_popup":
        if not isinstance(body, str):
            raise SchemaError(f"{path}.open_popup: must be a popup id string")
        return OpenPopup(body)
    if kind == "close_popup":
        return ClosePopup()
    if kind == "append_flag":
        return AppendFlag(*_flag_parts(body, path, "append_flag"))
    if kind == "emit_results":
        if not isinstance(body, dict) or not isinstance(body.get("table"), str):
            raise SchemaError(f"{path}.emit_results: needs a 'table' name")
        return EmitResults(
            table=body["table"],
            filter_field=body.get("filter_field"),
            filter_value=body.get("filter_value"),
            filter_value_from=_opt_bid(body.get("filter_value_from"), path),
            filter_value_from_flag=body.get("filter_value_from_flag"),
            sort_field=body.get("sort_field"),
            ascending=bool(body.get("ascending", True)),
            template=body.get("template", "{name}"),
            into=body.get("into", RESULTS_FLAG),
        )
    raise SchemaError(f"{path}: unknown effect '{kind}'")


def _effect_bid(body, path: str, kind: str) -> str:
    if not isinstance(body, dict):
        raise SchemaError(f"{path}.{kind}: must be an object")
    bid = body.get("bid")
    if isinstance(bid, int):
        bid = str(bid)
    if not isinstance(bid, str) or not bid:
        raise SchemaError(f"{path}.{kind}.bid: required non-empty string")
    return bid


def _opt_bid(v, path: str) -> Union[str, None]:
    if v is None:
        return None
    if isinstance(v, int):
        return str(v)
    if not isinstance(v, str):
        raise SchemaError(f"{path}: bid references must be strings")
    return v


def _flag_parts(body, path: str, kind: str):
    if not isinstance(body, dict) or not isinstance(body.get("name"), str):
        raise SchemaError(f"{path}.{kind}: needs a flag 'name'")
    if "value" not in body and "from" not in body:
        raise SchemaError(f"{path}.{kind}: needs 'value' or 'from'")
    return body["name"], body.get("value"), _opt_bid(body.get("from"), path)


def _parse_results_panel(raw, path: str) -> ResultsPanel:
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: must be an object")
    bid_base = raw.get("bid_base", 900)
    if not isinstance(bid_base, int):
        raise SchemaError(f"{path}.bid_base: must be an integer")
    role = raw.get("role", "statictext")
    if role not in ROLES:
        raise SchemaError(f"{path}.role: must be one of {sorted(ROLES)}")
    return ResultsPanel(bid_base, role, raw.get("from_flag", RESULTS_FLAG))


def _parse_dynamic_query(raw, path: str) -> DynamicQuery:
    if not isinstance(raw, dict) or not isinstance(raw.get("table"), str):
        raise SchemaError(f"{path}: needs a 'table' name")
    bid_base = raw.get("bid_base", 700)
    if not isinstance(bid_base, int):
        raise SchemaError(f"{path}.bid_base: must be an integer")
    role = raw.get("role", "statictext")
    if role not in ROLES:
        raise SchemaError(f"{path}.role: must be one of {sorted(ROLES)}")
    raw_sorts = raw.get("sort_fields", {})
    if not isinstance(raw_sorts, dict) or any(
        not isinstance(k, str) or not isinstance(v, str) for k, v in raw_sorts.items()
    ):
        raise SchemaError(f"{path}.sort_fields: must map selection values to field names")
    return DynamicQuery(
        table=raw["table"],
        filter_field=raw.get("filter_field"),
        filter_value=raw.get("filter_value"),
        filter_from_bid=_opt_bid(raw.get("filter_from_bid"), path),
        filter_from_flag=raw.get("filter_from_flag"),
        sort_from_bid=_opt_bid(raw.get("sort_from_bid"), path),
        sort_from_flag=raw.get("sort_from_flag"),
        sort_fields=tuple(raw_sorts.items()),
        template=raw.get("template", "{name}"),
        bid_base=bid_base,
        role=role,
    )


def _parse_page(raw, path: str) -> PageSpec:
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: must be an object")
    url = _req_str(raw, "url", f"{path}.url")
    title = _req_str(raw, "title", f"{path}.title")
    elements = _parse_elements(raw.get("elements", []), f"{path}.elements")
    rules = _parse_rules(raw.get("rules", []), f"{path}.rules")
    panel = None
    if "results_panel" in raw:
        panel = _parse_results_panel(raw["results_panel"], f"{path}.results_panel")
    dynamic = None
    if "dynamic_query" in raw:
        dynamic = _parse_dynamic_query(raw["dynamic_query"], f"{path}.dynamic_query")
    if panel is not None and dynamic is not None and panel.bid_base == dynamic.bid_base:
        raise SchemaError(f"{path}: results_panel and dynamic_query share bid_base {panel.bid_base}")
    return PageSpec(url, title, elements, rules, panel, dynamic)


def _parse_popup(raw, path: str) -> PopupSpec:
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: must be an object")
    popup_id = _req_str(raw, "popup_id", f"{path}.popup_id")
    title = _req_str(raw, "title", f"{path}.title")
    elements = _parse_elements(raw.get("elements", []), f"{path}.elements")
    rules = _parse_rules(raw.get("rules", []), f"{path}.rules")
    return PopupSpec(popup_id, title, elements, rules)


def _check_references(site: SiteSpec) -> None:
    if site.start_url not in site.pages:
        raise DanglingReference(f"start_url '{site.start_url}' is not a page")

    def check_effects(effects: tuple, where: str) -> None:
        for e in effects:
            if isinstance(e, Goto) and e.url not in site.pages:
                raise DanglingReference(f"{where}: goto target '{e.url}' is not a page")
            if isinstance(e, OpenPopup) and e.popup_id not in site.popups:
                raise DanglingReference(f"{where}: popup '{e.popup_id}' is not defined")
            if isinstance(e, EmitResults):
                if e.table not in site.data_tables:
                    raise DanglingReference(f"{where}: table '{e.table}' is not defined")
                records = site.data_tables[e.table]
                for fieldname in (e.filter_field, e.sort_field):
                    if fieldname and records and fieldname not in records[0]:
                        raise DanglingReference(
                            f"{where}: field '{fieldname}' not in table '{e.table}'"
                        )

    for url, page in site.pages.items():
        for i, rule in enumerate(page.rules):
            check_effects(rule.do, f"page '{url}' rule[{i}]")
        q = page.dynamic_query
        if q is not None:
            where = f"page '{url}' dynamic_query"
            if q.table not in site.data_tables:
                raise DanglingReference(f"{where}: table '{q.table}' is not defined")
            records = site.data_tables[q.table]
            fields = [q.filter_field] + [f.lstrip("-") for _, f in q.sort_fields]
            for fieldname in fields:
                if fieldname and records and fieldname not in records[0]:
                    raise DanglingReference(
                        f"{where}: field '{fieldname}' not in table '{q.table}'"
                    )
    for pid, popup in site.popups.items():
        for i, rule in enumerate(popup.rules):
            check_effects(rule.do, f"popup '{pid}' rule[{i}]")
