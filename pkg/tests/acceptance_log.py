"""Collects per-criterion outcomes so the session summary can print one line each."""
RESULTS: dict = {}
TITLES = {
    1: "pi-plus regression",
    2: "trace identities",
    3: "catalog golden set",
    4: "case zeros",
    5: "per-case closed forms",
    6: "aggregates",
    7: "case enumeration",
    8: "property suites",
    9: "numeric oracle",
    10: "J1 - J2 cross-derivation",
}


def record(criterion: int, ok: bool, detail: str = ""):
    prev_ok, prev_detail = RESULTS.get(criterion, (True, []))
    details = list(prev_detail)
    if detail and not ok:
        details.append(detail)
    RESULTS[criterion] = (prev_ok and ok, details)


def lines():
    out = []
    for k in sorted(RESULTS):
        ok, details = RESULTS[k]
        line = f"criterion {k:2d} ({TITLES[k]}): {'PASS' if ok else 'FAIL'}"
        if details:
            line += "  [" + "; ".join(details[:6]) + (" ..." if len(details) > 6 else "") + "]"
        out.append(line)
    return out
