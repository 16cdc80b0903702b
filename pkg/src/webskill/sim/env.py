"""Environment state, transition function, observation, and fingerprinting.

The stepper is a pure function over (site, state, action): it returns a new
state and an outcome, never mutating the input. Error outcomes leave the
state object untouched so a failed action can be proven side-effect free by
fingerprint comparison.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field

from ..dsl.nodes import Action
from .spec import (
    AppendFlag,
    ClosePopup,
    ElementSpec,
    EmitResults,
    Goto,
    OpenPopup,
    PageSpec,
    ResultsPanel,
    SetFlag,
    SetValue,
    SimError,
    SiteSpec,
    TransitionRule,
)

OK = "ok"
NO_EFFECT = "no_effect"
ERROR = "error"


class UnknownPredicate(SimError):
    """eval_predicate was asked for a predicate outside the fixed set."""


@dataclass
class EnvState:
    tabs: list  # urls, one per open tab
    focused: int
    overrides: dict = field(default_factory=dict)  # bid -> current value
    popup: str | None = None
    flags: dict = field(default_factory=dict)
    message_log: list = field(default_factory=list)
    back_stack: list = field(default_factory=list)
    forward_stack: list = field(default_factory=list)
    step_error: str | None = None

    @property
    def current_url(self) -> str:
        return self.tabs[self.focused]


@dataclass(frozen=True)
class StepResult:
    outcome: str  # OK | NO_EFFECT | ERROR
    error: str | None = None
    kind: str | None = None  # error kind when outcome == ERROR

    @property
    def ok(self) -> bool:
        return self.outcome != ERROR


@dataclass(frozen=True)
class Observation:
    text: str
    url: str


def reset(site: SiteSpec) -> EnvState:
    return EnvState(tabs=[site.start_url], focused=0)


def fingerprint(state: EnvState) -> str:
    payload = {
        "url": state.current_url,
        "overrides": sorted(state.overrides.items()),
        "popup": state.popup,
        "flags": sorted((k, json.dumps(v, sort_keys=True)) for k, v in state.flags.items()),
        "messages": len(state.message_log),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# Stepping

def step(site: SiteSpec, state: EnvState, action: Action) -> tuple[EnvState, StepResult]:
    """Apply one primitive action; returns (successor state, outcome).

    On an error outcome the returned state is the input object, unchanged.
    """
    try:
        return _dispatch(site, state, action)
    except _StepError as exc:
        return state, StepResult(ERROR, f"{exc.kind}: {exc}", exc.kind)


class _StepError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _unknown_element(bid: str, url: str) -> _StepError:
    return _StepError("UnknownElement", f"no element with bid '{bid}' on page '{url}'")


def _invalid(message: str) -> _StepError:
    return _StepError("InvalidArgument", message)


def _dispatch(site: SiteSpec, state: EnvState, action: Action) -> tuple[EnvState, StepResult]:
    name, args = action.name, action.args

    if name == "noop":
        return state, StepResult(NO_EFFECT)

    if name in ("send_msg_to_user", "report_infeasible"):
        new = copy.deepcopy(state)
        new.message_log.append(str(args[0]) if args else "")
        return new, StepResult(OK)

    if name == "goto":
        url = str(args[0])
        if url not in site.pages:
            raise _invalid(f"no page at url '{url}'")
        new = copy.deepcopy(state)
        new.back_stack.append(new.current_url)
        new.forward_stack.clear()
        new.tabs[new.focused] = url
        new.popup = None
        return new, StepResult(OK)

    if name == "go_back":
        if not state.back_stack:
            return state, StepResult(NO_EFFECT)
        new = copy.deepcopy(state)
        new.forward_stack.append(new.current_url)
        new.tabs[new.focused] = new.back_stack.pop()
        new.popup = None
        return new, StepResult(OK)

    if name == "go_forward":
        if not state.forward_stack:
            return state, StepResult(NO_EFFECT)
        new = copy.deepcopy(state)
        new.back_stack.append(new.current_url)
        new.tabs[new.focused] = new.forward_stack.pop()
        new.popup = None
        return new, StepResult(OK)

    if name == "new_tab":
        new = copy.deepcopy(state)
        new.tabs.append(site.start_url)
        new.focused = len(new.tabs) - 1
        new.popup = None
        return new, StepResult(OK)

    if name == "tab_close":
        if len(state.tabs) == 1:
            return state, StepResult(NO_EFFECT)
        new = copy.deepcopy(state)
        new.tabs.pop(new.focused)
        new.focused = min(new.focused, len(new.tabs) - 1)
        return new, StepResult(OK)

    if name == "tab_focus":
        idx = args[0]
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise _invalid(f"tab index must be an integer, got {idx!r}")
        if not 0 <= idx < len(state.tabs):
            raise _invalid(f"tab index {idx} out of range ({len(state.tabs)} open)")
        new = copy.deepcopy(state)
        new.focused = idx
        return new, StepResult(OK)

    if name in ("click", "hover"):
        bid = str(args[0])
        element = _find_element(site, state, bid)
        if element is None:
            raise _unknown_element(bid, state.current_url)
        return _apply_rules(site, state, name, bid, None)

    if name == "fill":
        bid, value = str(args[0]), str(args[1])
        element = _find_element(site, state, bid)
        if element is None:
            raise _unknown_element(bid, state.current_url)
        if element.role not in ("textbox", "combobox"):
            raise _invalid(f"cannot type into a {element.role} (bid '{bid}')")
        new = copy.deepcopy(state)
        new.overrides[bid] = value
        new, _ = _apply_rules(site, new, "fill", bid, value, base=new)
        return new, StepResult(OK)

    if name == "select_option":
        bid = str(args[0])
        raw = args[1]
        chosen = [str(v) for v in raw] if isinstance(raw, list) else [str(raw)]
        element = _find_element(site, state, bid)
        if element is None:
            raise _unknown_element(bid, state.current_url)
        if element.role != "combobox":
            raise _invalid(f"cannot select options of a {element.role} (bid '{bid}')")
        if not chosen:
            raise _invalid("select_option needs at least one option")
        for c in chosen:
            if c not in element.options:
                raise _invalid(f"'{c}' is not an option of bid '{bid}'")
        value = ", ".join(chosen)
        new = copy.deepcopy(state)
        new.overrides[bid] = value
        new, _ = _apply_rules(site, new, "select_option", bid, value, base=new)
        return new, StepResult(OK)

    if name == "keyboard_press":
        return _apply_rules(site, state, "keyboard_press", None, str(args[0]))

    if name == "scroll":
        return _apply_rules(site, state, "scroll", None, None)

    raise _invalid(f"unknown primitive '{name}'")


def _find_element(site: SiteSpec, state: EnvState, bid: str) -> ElementSpec | None:
    if state.popup is not None:
        popup = site.popups[state.popup]
        found = popup.element(bid)
        if found is not None:
            return found
    page = site.pages.get(state.current_url)
    if page is None:
        return None
    found = page.element(bid)
    if found is not None:
        return found
    for e in _result_elements(site, state, page):
        if e.bid == bid:
            return e
    return None


def _result_elements(site: SiteSpec, state: EnvState, page: PageSpec) -> list:
    """Elements computed from state: stored results plus live table queries."""
    out = []
    panel = page.results_panel
    if panel is not None:
        items = state.flags.get(panel.from_flag)
        if isinstance(items, list):
            out.extend(
                ElementSpec(str(panel.bid_base + i + 1), panel.role, str(text))
                for i, text in enumerate(items)
            )
    q = page.dynamic_query
    if q is not None:
        out.extend(
            ElementSpec(str(q.bid_base + i + 1), q.role, text)
            for i, text in enumerate(_dynamic_rows(site, state, q))
        )
    return out


def _dynamic_rows(site: SiteSpec, state: EnvState, q) -> list:
    records = site.data_tables[q.table]
    if q.filter_field is not None:
        needle = q.filter_value
        if q.filter_from_bid is not None:
            needle = _effective_value(site, state, q.filter_from_bid)
        elif q.filter_from_flag is not None:
            needle = str(state.flags.get(q.filter_from_flag, ""))
        needle = (needle or "").lower()
        records = [r for r in records if needle in str(r.get(q.filter_field, "")).lower()]
    selection = None
    if q.sort_from_bid is not None:
        selection = _effective_value(site, state, q.sort_from_bid)
    elif q.sort_from_flag is not None:
        selection = str(state.flags.get(q.sort_from_flag, ""))
    sort_field = dict(q.sort_fields).get(selection) if selection else None
    if sort_field:
        reverse = sort_field.startswith("-")
        key = sort_field.lstrip("-")
        records = sorted(records, key=lambda r: r.get(key), reverse=reverse)
    return [q.template.format(**r) for r in records]


def _matching_rule(site: SiteSpec, state: EnvState, action: str, bid: str | None,
                   value: str | None) -> TransitionRule | None:
    scopes = []
    if state.popup is not None:
        scopes.append(site.popups[state.popup].rules)
    page = site.pages.get(state.current_url)
    if page is not None:
        scopes.append(page.rules)
    for rules in scopes:
        for rule in rules:
            t = rule.on
            if t.action != action:
                continue
            if t.bid is not None and t.bid != bid:
                continue
            if t.value is not None and t.value != value:
                continue
            return rule
    return None


def _apply_rules(site: SiteSpec, state: EnvState, action: str, bid: str | None,
                 value: str | None, base: EnvState | None = None) -> tuple[EnvState, StepResult]:
    """Fire the first matching rule. ``base`` carries prior default effects
    (fill/select_option set their override before rules run); with a base,
    the outcome is OK even when no rule matches."""
    rule = _matching_rule(site, state, action, bid, value)
    if rule is None:
        if base is not None:
            return base, StepResult(OK)
        return state, StepResult(NO_EFFECT)
    new = base if base is not None else copy.deepcopy(state)
    for effect in rule.do:
        _apply_effect(site, new, effect)
    return new, StepResult(OK)


def _apply_effect(site: SiteSpec, state: EnvState, effect) -> None:
    if isinstance(effect, Goto):
        state.back_stack.append(state.current_url)
        state.forward_stack.clear()
        state.tabs[state.focused] = effect.url
        state.popup = None
    elif isinstance(effect, SetValue):
        if effect.from_bid is not None:
            state.overrides[effect.bid] = _effective_value(site, state, effect.from_bid)
        elif effect.value is None:
            state.overrides.pop(effect.bid, None)
        else:
            state.overrides[effect.bid] = str(effect.value)
    elif isinstance(effect, SetFlag):
        state.flags[effect.name] = (
            _effective_value(site, state, effect.from_bid)
            if effect.from_bid is not None else effect.value
        )
    elif isinstance(effect, OpenPopup):
        state.popup = effect.popup_id
    elif isinstance(effect, ClosePopup):
        state.popup = None
    elif isinstance(effect, AppendFlag):
        value = (
            _effective_value(site, state, effect.from_bid)
            if effect.from_bid is not None else effect.value
        )
        existing = state.flags.get(effect.name)
        if not isinstance(existing, list):
            existing = []
        state.flags[effect.name] = existing + [value]
    elif isinstance(effect, EmitResults):
        state.flags[effect.into] = _run_query(site, state, effect)
    else:
        raise SimError(f"unknown effect {effect!r}")


def _effective_value(site: SiteSpec, state: EnvState, bid: str) -> str:
    if bid in state.overrides:
        return state.overrides[bid]
    for page in site.pages.values():
        e = page.element(bid)
        if e is not None:
            return e.value or ""
    for popup in site.popups.values():
        e = popup.element(bid)
        if e is not None:
            return e.value or ""
    return ""


def _run_query(site: SiteSpec, state: EnvState, q: EmitResults) -> list:
    records = site.data_tables[q.table]
    if q.filter_field is not None:
        needle = q.filter_value
        if q.filter_value_from is not None:
            needle = _effective_value(site, state, q.filter_value_from)
        elif q.filter_value_from_flag is not None:
            needle = str(state.flags.get(q.filter_value_from_flag, ""))
        needle = (needle or "").lower()
        records = [r for r in records if needle in str(r.get(q.filter_field, "")).lower()]
    if q.sort_field is not None:
        records = sorted(records, key=lambda r: r.get(q.sort_field), reverse=not q.ascending)
    return [q.template.format(**r) for r in records]


# ---------------------------------------------------------------------------
# Observation

def observe(site: SiteSpec, state: EnvState) -> Observation:
    page = site.pages.get(state.current_url)
    if page is None:
        raise SimError(f"no page at url '{state.current_url}'")
    lines = [f"RootWebArea '{page.title}'"]
    for e in list(page.elements) + _result_elements(site, state, page):
        lines.append("  " + _element_line(e, state))
    if state.popup is not None:
        popup = site.popups[state.popup]
        lines.append(f"  dialog '{popup.title}'")
        for e in popup.elements:
            lines.append("    " + _element_line(e, state))
    return Observation("\n".join(lines), state.current_url)


def _element_line(e: ElementSpec, state: EnvState) -> str:
    line = f"[{e.bid}] {e.role} '{e.name}'"
    value = state.overrides.get(e.bid, e.value)
    if value is not None and value != "":
        line += f" value='{value}'"
    if e.options:
        line += f" options=[{', '.join(repr(o) for o in e.options)}]"
    return line


# ---------------------------------------------------------------------------
# Predicates

def eval_predicate(site: SiteSpec, state: EnvState, name: str, args: tuple) -> bool:
    if name == "has_popup_window":
        return state.popup is not None
    if name == "element_exists":
        bid = str(args[0])
        return _find_element(site, state, bid) is not None
    if name == "text_present":
        return str(args[0]) in observe(site, state).text
    raise UnknownPredicate(f"unknown predicate '{name}'")


# ---------------------------------------------------------------------------
# Stateful wrapper

class WebEnv:
    """One episode's environment: owns an EnvState and applies actions."""

    def __init__(self, site: SiteSpec):
        self.site = site
        self.state = reset(site)

    def reset(self) -> Observation:
        self.state = reset(self.site)
        return self.observe()

    def step(self, action: Action) -> StepResult:
        new_state, result = step(self.site, self.state, action)
        self.state = new_state
        self.state.step_error = result.error
        return result

    def observe(self) -> Observation:
        return observe(self.site, self.state)

    def fingerprint(self) -> str:
        return fingerprint(self.state)

    def eval_predicate(self, name: str, args: tuple) -> bool:
        return eval_predicate(self.site, self.state, name, args)
