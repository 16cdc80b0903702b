#!/usr/bin/env python3
"""Regenerate the bundled scripted-backend transcripts.

Each transcript pins one deterministic run of the online loop on a bundled
site: every model response the run consumes, in order, keyed by role. The
files land in src/webskill/replays/ and ship with the package.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from webskill.llm.replay import ReplayEntry, save_replay

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "webskill" / "replays"


class Script:
    """Accumulates replay entries with per-role running indexes."""

    def __init__(self):
        self.entries = []
        self._counts = {}

    def add(self, role: str, text: str) -> None:
        i = self._counts.get(role, 0)
        self._counts[role] = i + 1
        self.entries.append(ReplayEntry(role, i, text))

    def policy(self, thought: str, action: str) -> None:
        self.add("policy", f"{thought}\n\n```\n{action}\n```")

    def steps(self, triples) -> None:
        for thought, _, action in triples:
            self.policy(thought, action)

    def summaries(self, triples) -> None:
        for _, summary, _ in triples:
            self.add("cleaner", summary)


# ---------------------------------------------------------------------------
# mini_shop: eight tasks, scripted per mode as (thought, summary, action)

SHOP_VANILLA = {
    "shop_t1": [
        ("The task asks for the top catalog result for ground coffee. The home"
         " page has a search box with bid 12, so I will type the query there.",
         "Typed ground coffee into the search box.",
         "fill('12', 'ground coffee')"),
        ("The search text is in place. Clicking the Go button with bid 13"
         " should run the search and open the results page.",
         "Clicked Go to run the catalog search.",
         "click('13')"),
        ("The results page lists Ground Coffee Dark Roast at $11.00 as the top"
         " match. I will report that to the user.",
         "Reported the top search result to the user.",
         "send_msg_to_user('Top result: Ground Coffee Dark Roast - $11.00')"),
    ],
    "shop_t2": [
        ("Another catalog lookup. I will type wireless headphone into the"
         " search box with bid 12.",
         "Typed wireless headphone into the search box.",
         "fill('12', 'wireless headphone')"),
        ("Running the search with the Go button, bid 13.",
         "Clicked Go to run the catalog search.",
         "click('13')"),
        ("The only match is Wireless Headphone at $39.90. Reporting it.",
         "Reported the matching product to the user.",
         "send_msg_to_user('Top result: Wireless Headphone - $39.90')"),
    ],
    "shop_t3": [
        ("The ceramic coffee mug has its own product link with bid 35 on the"
         " home page. Opening the product page first.",
         "Opened the ceramic coffee mug product page.",
         "click('35')"),
        ("The product page shows the Add to Cart button with bid 52. Clicking"
         " it puts the mug in the cart.",
         "Clicked Add to Cart on the product page.",
         "click('52')"),
        ("The cart now holds the ceramic coffee mug, so the task is done."
         " Confirming to the user.",
         "Confirmed the cart update to the user.",
         "send_msg_to_user('Added the Ceramic Coffee Mug to your cart.')"),
    ],
    "shop_t4": [
        ("The wireless headphone product link has bid 31 on the home page."
         " Opening its product page.",
         "Opened the wireless headphone product page.",
         "click('31')"),
        ("Clicking Add to Cart, bid 52, to put the headphone in the cart.",
         "Clicked Add to Cart on the product page.",
         "click('52')"),
        ("The headphone is in the cart. Confirming to the user.",
         "Confirmed the cart update to the user.",
         "send_msg_to_user('Added the Wireless Headphone to your cart.')"),
    ],
    "shop_t5": [
        ("Two items must go in the cart. Starting with the ground coffee link,"
         " bid 34, on the home page.",
         "Opened the ground coffee product page.",
         "click('34')"),
        ("Adding the coffee to the cart with the bid 52 button.",
         "Clicked Add to Cart for the coffee.",
         "click('52')"),
        ("Heading back to the home page with the bid 53 link so the mug link"
         " is clickable again.",
         "Returned to the home page.",
         "click('53')"),
        ("Now opening the ceramic coffee mug page, bid 35.",
         "Opened the ceramic coffee mug product page.",
         "click('35')"),
        ("Adding the mug to the cart with the bid 52 button.",
         "Clicked Add to Cart for the mug.",
         "click('52')"),
        ("Both requested items are in the cart. Reporting completion.",
         "Confirmed both cart updates to the user.",
         "send_msg_to_user('Both items are in your cart.')"),
    ],
    "shop_t6": [
        ("Address settings live under the account area. The My Account link"
         " has bid 15.",
         "Opened the account area.",
         "click('15')"),
        ("The account page links to the address book with bid 81. Opening it.",
         "Opened the address book page.",
         "click('81')"),
        ("The billing address field has bid 71. Typing the new street address.",
         "Typed the new billing address.",
         "fill('71', '5 Oak Lane')"),
        ("Saving the billing address with the Save Billing button, bid 72.",
         "Saved the billing address.",
         "click('72')"),
        ("Now the shipping address field with bid 73 gets the same street.",
         "Typed the new shipping address.",
         "fill('73', '5 Oak Lane')"),
        ("Saving the shipping address with the Save Shipping button, bid 74.",
         "Saved the shipping address.",
         "click('74')"),
        ("Both addresses are saved as 5 Oak Lane. Telling the user.",
         "Confirmed both address updates to the user.",
         "send_msg_to_user('Billing and shipping address both updated to 5 Oak Lane.')"),
    ],
    "shop_t7": [
        ("One more catalog lookup, this time for notebooks. Typing into the"
         " bid 12 search box.",
         "Typed notebook into the search box.",
         "fill('12', 'notebook')"),
        ("Running the search with the Go button, bid 13.",
         "Clicked Go to run the catalog search.",
         "click('13')"),
        ("Spiral Notebook at $3.75 is the top match. Reporting it.",
         "Reported the top search result to the user.",
         "send_msg_to_user('Top result: Spiral Notebook - $3.75')"),
    ],
    "shop_t8": [
        ("Search results come back sorted by price ascending, so searching for"
         " coffee puts the cheapest match first. Typing the query.",
         "Typed coffee into the search box.",
         "fill('12', 'coffee')"),
        ("Running the search with the Go button, bid 13.",
         "Clicked Go to run the catalog search.",
         "click('13')"),
        ("The first row is Ceramic Coffee Mug - $7.50, the cheapest coffee"
         " match. Reporting it.",
         "Reported the cheapest matching product.",
         "send_msg_to_user('Cheapest match: Ceramic Coffee Mug - $7.50')"),
    ],
}

SHOP_ASI = dict(
    SHOP_VANILLA,
    shop_t2=[
        ("The learned skill search_catalog covers the fill and click sequence"
         " for catalog searches. Calling it with the headphone query.",
         "Ran the catalog search skill for wireless headphones.",
         "search_catalog('wireless headphone')"),
        ("The results page shows Wireless Headphone at $39.90 as the only"
         " match. Reporting it now.",
         "Reported the matching product to the user.",
         "send_msg_to_user('Top result: Wireless Headphone - $39.90')"),
    ],
    shop_t4=[
        ("The learned add_product_to_cart skill handles the whole flow; the"
         " wireless headphone link has bid 31.",
         "Added the wireless headphone with the cart skill.",
         "add_product_to_cart('31')"),
        ("The cart now contains the wireless headphone. Confirming.",
         "Confirmed the cart update to the user.",
         "send_msg_to_user('Added the Wireless Headphone to your cart.')"),
    ],
    shop_t5=[
        ("Two items must go in the cart. The add_product_to_cart skill starts"
         " from the home page, so it works for the coffee link with bid 34.",
         "Added the ground coffee with the cart skill.",
         "add_product_to_cart('34')"),
        ("The coffee is in the cart. The same skill now handles the mug with"
         " bid 35.",
         "Added the ceramic mug with the cart skill.",
         "add_product_to_cart('35')"),
        ("Both requested items are in the cart. Reporting completion.",
         "Confirmed both cart updates to the user.",
         "send_msg_to_user('Both items are in your cart.')"),
    ],
    shop_t7=[
        ("The search_catalog skill handles catalog queries. Searching for"
         " notebooks.",
         "Ran the catalog search skill for notebooks.",
         "search_catalog('notebook')"),
        ("Spiral Notebook at $3.75 is the top match. Reporting it.",
         "Reported the top search result to the user.",
         "send_msg_to_user('Top result: Spiral Notebook - $3.75')"),
    ],
    shop_t8=[
        ("Search results come back sorted by price, so the search skill will"
         " put the cheapest coffee match first.",
         "Ran the catalog search skill for coffee.",
         "search_catalog('coffee')"),
        ("The first row is Ceramic Coffee Mug - $7.50, the cheapest coffee"
         " match. Reporting it.",
         "Reported the cheapest matching product.",
         "send_msg_to_user('Cheapest match: Ceramic Coffee Mug - $7.50')"),
    ],
)

IND_SEARCH = '''\
The two search actions always appear together over the same two elements, so they fold into one function.

```python
def search_catalog(term: str):
    """Search the catalog from the home page and open the results.

    Args:
        term: Text typed into the search box.

    Returns:
        None

    Examples:
        search_catalog('ground coffee')
    """
    fill('12', term)
    click('13')
```

Instruction: Search the catalog for ground coffee and tell me the top result.
```python
search_catalog('ground coffee')
send_msg_to_user('Top result: Ground Coffee Dark Roast - $11.00')
```
'''

IND_CART = '''\
Opening a product page and pressing its cart button is one reusable unit; starting from the home page keeps the product links clickable.

```python
def add_product_to_cart(product_link: str):
    """Open one product from the home page and add it to the cart.

    Args:
        product_link: bid of the product link on the home page.

    Returns:
        None

    Examples:
        add_product_to_cart('35')
    """
    goto('/home')
    click(product_link)
    click('52')
```

Instruction: Add the ceramic coffee mug to my shopping cart.
```python
add_product_to_cart('35')
send_msg_to_user('Added the Ceramic Coffee Mug to your cart.')
```
'''

IND_ADDRESS = '''\
The four form actions on the address page form one parameterized unit; the two navigation clicks stay outside it.

```python
def update_address_details(billing: str, shipping: str):
    """Fill and save the billing and shipping address fields.

    Args:
        billing: New billing street address.
        shipping: New shipping street address.

    Returns:
        None

    Examples:
        update_address_details('5 Oak Lane', '5 Oak Lane')
    """
    fill('71', billing)
    click('72')
    fill('73', shipping)
    click('74')
```

Instruction: Update both my billing address and my shipping address to 5 Oak Lane.
```python
click('15')
click('81')
update_address_details('5 Oak Lane', '5 Oak Lane')
send_msg_to_user('Billing and shipping address both updated to 5 Oak Lane.')
```
'''

IND_OVERLONG = '''\
A single function can run the search and send the answer in one shot.

```python
def report_cheapest_match(term: str):
    """Search the catalog and report the cheapest match.

    Args:
        term: Text typed into the search box.

    Returns:
        None

    Examples:
        report_cheapest_match('coffee')
    """
    goto('/home')
    fill('12', term)
    click('13')
    noop(500)
    noop(500)
    send_msg_to_user('The cheapest match is shown first.')
```

Instruction: Search the catalog for coffee and tell me the cheapest match.
```python
report_cheapest_match('coffee')
send_msg_to_user('Cheapest match: Ceramic Coffee Mug - $7.50')
```
'''

IND_NOTHING = (
    "The trajectory is already one library call plus the final report, so"
    " there is nothing new to extract."
)
IND_TOO_SIMPLE = (
    "Every grouping here would either be a single action or would bake the"
    " final message into the function, so no function is worth extracting."
)

SHOP_INDUCER = {
    "shop_t1": IND_SEARCH,
    "shop_t2": IND_NOTHING,
    "shop_t3": IND_CART,
    "shop_t4": IND_NOTHING,
    "shop_t5": IND_NOTHING,
    "shop_t6": IND_ADDRESS,
    "shop_t7": IND_NOTHING,
    "shop_t8": IND_OVERLONG,
}

# tasks whose induction passes verification, with the scripted continuation
SHOP_VERIFY = {
    "shop_t1": (
        "The forced steps already ran the catalog search and the results page"
        " shows Ground Coffee Dark Roast at $11.00 on top. Answering the user.",
        "send_msg_to_user('Top result: Ground Coffee Dark Roast - $11.00')",
    ),
    "shop_t3": (
        "The forced skill call already placed the mug in the cart, so I can"
        " confirm completion.",
        "send_msg_to_user('Added the Ceramic Coffee Mug to your cart.')",
    ),
    "shop_t6": (
        "The forced prefix saved both addresses, so the task is complete.",
        "send_msg_to_user('Billing and shipping address both updated to 5 Oak Lane.')",
    ),
}

SHOP_ORDER = [f"shop_t{i}" for i in range(1, 9)]


def build_shop(mode_steps, induce: bool, verify: bool) -> list:
    script = Script()
    for task_id in SHOP_ORDER:
        triples = mode_steps[task_id]
        script.steps(triples)
        if not induce:
            continue
        script.summaries(triples)
        script.add("inducer", SHOP_INDUCER[task_id])
        if verify and task_id in SHOP_VERIFY:
            thought, action = SHOP_VERIFY[task_id]
            script.policy(thought, action)
    return script.entries


# ---------------------------------------------------------------------------
# mini_admin: six tasks run in asi mode

ADMIN_STEPS = {
    "admin_t1": [
        ("Reviews live under the marketing section of the admin panel."
         " Opening the Marketing menu first.",
         "Opened the Marketing menu.",
         "click('Marketing')"),
        ("The marketing menu lists All Reviews. Opening the full review list.",
         "Opened the full review list.",
         "click('All Reviews')"),
        ("To search the reviews I first focus the search box with bid 757.",
         "Focused the review search box.",
         "click('757')"),
        ("Typing the keyword satisfied into the focused search box.",
         "Typed satisfied into the review search box.",
         "fill('757', 'satisfied')"),
        ("Clicking the Search button with bid 1239 to filter the reviews.",
         "Ran the review search.",
         "click('1239')"),
        ("Two reviews mention the word satisfied: one from dana and one from"
         " lee. Answering with the count.",
         "Reported the count of matching reviews.",
         "send_msg_to_user('2')"),
    ],
    "admin_t2": [
        ("Orders live in the sales section; the SALES link has bid 183.",
         "Opened the sales orders page.",
         "click('183')"),
        ("Typing cancelled into the status filter, bid 310.",
         "Typed cancelled into the status filter.",
         "fill('310', 'cancelled')"),
        ("Applying the status filter with the bid 311 button.",
         "Applied the status filter.",
         "click('311')"),
        ("Three orders are cancelled: 1001, 1003 and 1005. Listing them.",
         "Reported the cancelled order ids.",
         "send_msg_to_user('Cancelled orders: 1001, 1003, 1005')"),
    ],
    "admin_t3": [
        ("The review list is one learned call away with open_marketing_reviews.",
         "Opened the review list with the learned skill.",
         "open_marketing_reviews()"),
        ("Now searching the reviews for the word shipping with the search"
         " skill.",
         "Searched the reviews for shipping.",
         "search_reviews('shipping')"),
        ("The only match is kim's review about the shipping delay. Answering.",
         "Reported who complained about shipping.",
         "send_msg_to_user('kim complained about the shipping delay.')"),
    ],
    "admin_t4": [
        ("The SALES link with bid 183 goes straight to the sales orders page.",
         "Opened the sales orders page.",
         "click('183')"),
        ("The sales orders page is open, which is all the task asked for.",
         "Confirmed the sales page is open.",
         "send_msg_to_user('The sales orders page is open.')"),
    ],
    "admin_t5": [
        ("Another review query; open_marketing_reviews gets me to the list.",
         "Opened the review list with the learned skill.",
         "open_marketing_reviews()"),
        ("Searching the reviews for the word quality.",
         "Searched the reviews for quality.",
         "search_reviews('quality')"),
        ("The matching review is from dana. Answering with the author.",
         "Reported the author of the quality review.",
         "send_msg_to_user('dana wrote the review that mentions quality.')"),
    ],
    "admin_t6": [
        ("Customer records live behind the Customers link, bid 184.",
         "Opened the customers page.",
         "click('184')"),
        ("Typing Jordan into the customer name filter, bid 401.",
         "Typed Jordan into the customer filter.",
         "fill('401', 'Jordan')"),
        ("Running the lookup with the Find button, bid 402.",
         "Ran the customer lookup.",
         "click('402')"),
        ("The record shows Jordan Reyes lives in Lakeview. Answering.",
         "Reported the customer's city.",
         "send_msg_to_user('Jordan Reyes lives in Lakeview.')"),
    ],
}

IND_REVIEWS = '''\
The navigation pair and the search trio each repeat for any review query, so they become two functions.

```python
def open_marketing_reviews():
    """Open the full review list from the admin dashboard.

    Args:
        None

    Returns:
        None

    Examples:
        open_marketing_reviews()
    """
    click('Marketing')
    click('All Reviews')
```

```python
def search_reviews(search_term: str):
    """Search the review list for a keyword.

    Args:
        search_term: Keyword typed into the review search box.

    Returns:
        None

    Examples:
        search_reviews('satisfied')
    """
    click('757')
    fill('757', search_term)
    click('1239')
```

Instruction: How many of our product reviews mention the word satisfied?
```python
open_marketing_reviews()
search_reviews('satisfied')
send_msg_to_user('2')
```
'''

IND_ORDERS = '''\
Filtering the order list by status is a fixed three-action pattern over the same elements.

```python
def filter_orders_by_status(status: str):
    """Filter the sales order list by order status.

    Args:
        status: Status keyword typed into the filter box.

    Returns:
        None

    Examples:
        filter_orders_by_status('cancelled')
    """
    click('183')
    fill('310', status)
    click('311')
```

Instruction: List the ids of all cancelled orders.
```python
filter_orders_by_status('cancelled')
send_msg_to_user('Cancelled orders: 1001, 1003, 1005')
```
'''

ADMIN_INDUCER = {
    "admin_t1": IND_REVIEWS,
    "admin_t2": IND_ORDERS,
    "admin_t3": IND_NOTHING,
    "admin_t4": IND_TOO_SIMPLE,
    "admin_t5": IND_NOTHING,
    "admin_t6": IND_TOO_SIMPLE,
}

ADMIN_VERIFY = {
    "admin_t1": (
        "The forced calls already filtered the reviews; the two matching rows"
        " are visible, so the answer is 2.",
        "send_msg_to_user('2')",
    ),
    "admin_t2": (
        "The forced call already filtered the orders to the three cancelled"
        " rows. Listing their ids.",
        "send_msg_to_user('Cancelled orders: 1001, 1003, 1005')",
    ),
}

ADMIN_ORDER = [f"admin_t{i}" for i in range(1, 7)]


def build_admin() -> list:
    script = Script()
    for task_id in ADMIN_ORDER:
        triples = ADMIN_STEPS[task_id]
        script.steps(triples)
        script.summaries(triples)
        script.add("inducer", ADMIN_INDUCER[task_id])
        if task_id in ADMIN_VERIFY:
            thought, action = ADMIN_VERIFY[task_id]
            script.policy(thought, action)
    return script.entries


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    files = {
        "mini_shop_asi.jsonl": build_shop(SHOP_ASI, induce=True, verify=True),
        "mini_shop_vanilla.jsonl": build_shop(SHOP_VANILLA, induce=False, verify=False),
        "mini_shop_memory_verified.jsonl": build_shop(SHOP_VANILLA, induce=True, verify=True),
        "mini_shop_memory_unverified.jsonl": build_shop(SHOP_VANILLA, induce=True, verify=False),
        "mini_admin_asi.jsonl": build_admin(),
    }
    for name, entries in files.items():
        save_replay(entries, OUT_DIR / name)
        roles = {}
        for e in entries:
            roles[e.role] = roles.get(e.role, 0) + 1
        print(f"{name}: {sum(roles.values())} entries {roles}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
