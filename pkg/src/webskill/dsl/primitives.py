"""The built-in browser action space: 15 primitives with fixed signatures."""

from __future__ import annotations

from dataclasses import dataclass

# Semantic categories for primitive parameters. They constrain which literal
# shapes a call may pass; they are not a general type system.
ELEM = "elem"        # element bid, a string
TEXT = "text"        # free text
NUMBER = "number"    # int or float
KEY = "key"          # key combination string, e.g. 'Control+a'
URL = "url"          # page url string
OPTIONS = "options"  # a string or a list of strings
INDEX = "index"      # integer tab index


@dataclass(frozen=True)
class ParamSig:
    name: str
    category: str


@dataclass(frozen=True)
class PrimitiveSig:
    name: str
    params: tuple[ParamSig, ...]
    description: str
    terminating: bool = False

    @property
    def arity(self) -> int:
        return len(self.params)

    def signature(self) -> str:
        return f"{self.name}({', '.join(p.name for p in self.params)})"


def _sig(name: str, params: list[tuple[str, str]], description: str,
         terminating: bool = False) -> PrimitiveSig:
    return PrimitiveSig(name, tuple(ParamSig(n, c) for n, c in params), description, terminating)


PRIMITIVES: dict[str, PrimitiveSig] = {
    s.name: s
    for s in [
        _sig("noop", [("wait_ms", NUMBER)], "Wait for the given number of milliseconds without acting."),
        _sig("click", [("elem", ELEM)], "Click the element with the given bid."),
        _sig("hover", [("elem", ELEM)], "Move the pointer onto the element with the given bid."),
        _sig("fill", [("elem", ELEM), ("value", TEXT)], "Type the value into the element with the given bid."),
        _sig("keyboard_press", [("key_comb", KEY)], "Press a keyboard key combination."),
        _sig("scroll", [("x", NUMBER), ("y", NUMBER)], "Scroll the page by the given horizontal and vertical amounts."),
        _sig("select_option", [("elem", ELEM), ("options", OPTIONS)], "Choose one or more options of a combobox."),
        _sig("goto", [("url", URL)], "Navigate the focused tab to a url."),
        _sig("go_back", [], "Navigate back in the focused tab's history."),
        _sig("go_forward", [], "Navigate forward in the focused tab's history."),
        _sig("new_tab", [], "Open a new tab and focus it."),
        _sig("tab_close", [], "Close the focused tab."),
        _sig("tab_focus", [("index", INDEX)], "Focus the tab at the given index."),
        _sig("send_msg_to_user", [("text", TEXT)], "Send a final message to the user and end the task.", terminating=True),
        _sig("report_infeasible", [("reason", TEXT)], "Tell the user the task cannot be done and end the task.", terminating=True),
    ]
}

TERMINATING = frozenset(name for name, s in PRIMITIVES.items() if s.terminating)


def is_primitive(name: str) -> bool:
    return name in PRIMITIVES


def coerce_args(name: str, values: tuple) -> tuple:
    """Normalize argument values for a primitive call.

    Element bids are strings in the page tree, but models and skill sources
    often write them as bare numbers; integral numbers in ELEM position are
    converted to their string form.
    """
    sig = PRIMITIVES[name]
    out = []
    for p, v in zip(sig.params, values):
        if p.category == ELEM and isinstance(v, (int, float)) and not isinstance(v, bool):
            v = str(int(v)) if float(v).is_integer() else str(v)
        out.append(v)
    return tuple(out)
