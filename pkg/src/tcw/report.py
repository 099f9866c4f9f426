"""Report emission: plain tables, the structured block and figures.

Everything printed here is deterministic given the same inputs and bounds;
figures go to files and only their paths are printed.
"""
from __future__ import annotations

import json
from typing import Dict, Optional, Sequence

from .properties import NAMES, PROPERTIES, Profile

BEGIN = "--- BEGIN TCW REPORT ---"
END = "--- END TCW REPORT ---"

_SIGN_VALUE = {"+": 1.0, "?": 0.5, "-": 0.0}


def _plain(obj):
    """Turn verdict payloads into JSON-safe values (strings for anything odd)."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return "Inf" if obj == float("inf") else obj
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return str(obj)


def structured_block(payload: Dict) -> str:
    body = json.dumps(_plain(payload), indent=2, sort_keys=True, ensure_ascii=False)
    return f"{BEGIN}\n{body}\n{END}"


def parse_structured_block(text: str):
    """Inverse of structured_block for harnesses; the first block wins."""
    start = text.index(BEGIN) + len(BEGIN)
    return json.loads(text[start : text.index(END, start)])


def verdict_record(v) -> Dict:
    return {
        "status": v.status,
        "sign": v.sign,
        "bounded": v.bounded,
        "detail": v.detail,
        "counterexample": v.counterexample,
    }


def profile_record(P: Profile) -> Dict:
    return {
        "theory": P.theory.name,
        "bound": P.bound,
        "row": P.row(),
        "verdicts": {p: verdict_record(P.verdicts[p]) for p in PROPERTIES},
        "violations": list(P.violations),
        "expected": dict(P.theory.expected_profile),
        "mismatches": {p: list(v) for p, v in P.mismatches().items()},
        "exhausted": P.exhausted,
    }


def profile_text(P: Profile) -> str:
    lines = [f"{P.theory.name}  (bound {P.bound})", f"  {P.row()}"]
    for p in PROPERTIES:
        lines.append(f"  {p:<3} {NAMES[p]:<34} {P.verdicts[p]}")
    if P.exhausted:
        lines.append("  note: some checks ran past a sequence oracle's known prefix")
    if P.violations:
        lines.append("  impossibility violations: " + "; ".join(P.violations))
    return "\n".join(lines)


def catalog_table(profiles: Sequence[Profile]) -> str:
    width = max([len("theory")] + [len(P.theory.name) for P in profiles])
    head = f"{'theory':<{width}}  bound  " + " ".join(f"{p:<3}" for p in PROPERTIES) + "  status"
    lines = [head, "-" * len(head)]
    for P in profiles:
        cells = []
        exp = P.theory.expected_profile
        for p in PROPERTIES:
            s = P.signs[p]
            mark = "!" if p in exp and exp[p] != s else (" " if p not in exp else "=")
            cells.append(f"{s}{mark} ")
        status = "ok"
        if P.mismatches():
            status = "MISMATCH " + ",".join(f"{p}:{e}/{g}" for p, (e, g) in sorted(P.mismatches().items()))
        if P.violations:
            status = ("VIOLATION " + "; ".join(P.violations)) if status == "ok" else status + " VIOLATION"
        lines.append(f"{P.theory.name:<{width}}  {P.bound:>5}  " + " ".join(cells) + f"  {status}")
    lines.append("")
    lines.append("legend: + Proved, - Refuted, ? Unknown; '=' agrees with the expected row, '!' disagrees")
    return "\n".join(lines)


# ---------------------------------------------------------------- figures


def plot_profiles(profiles: Sequence[Profile], path: str, title: Optional[str] = None) -> str:
    """Heatmap of theories × properties. Cells carry the sign; expected
    disagreements get a red frame and violating rows a red label."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap
    from matplotlib.patches import Rectangle

    rows = list(profiles)
    grid = [[_SIGN_VALUE[P.signs[p]] for p in PROPERTIES] for P in rows]
    cmap = ListedColormap(["#d9705a", "#e8e3c8", "#6aa56e"])
    fig, ax = plt.subplots(figsize=(1.2 + 0.6 * len(PROPERTIES), 0.9 + 0.38 * len(rows)))
    ax.imshow(grid, cmap=cmap, vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(PROPERTIES)))
    ax.set_xticklabels(PROPERTIES)
    ax.xaxis.tick_top()
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([P.theory.name for P in rows], fontsize=8)
    for i, P in enumerate(rows):
        bad = P.mismatches()
        for j, p in enumerate(PROPERTIES):
            ax.text(j, i, P.signs[p], ha="center", va="center", fontsize=10)
            if p in bad:
                ax.add_patch(Rectangle((j - 0.5, i - 0.5), 1, 1, fill=False, edgecolor="red", linewidth=2))
        if P.violations:
            ax.get_yticklabels()[i].set_color("red")
    ax.set_xticks([x - 0.5 for x in range(1, len(PROPERTIES))], minor=True)
    ax.set_yticks([y - 0.5 for y in range(1, len(rows))], minor=True)
    ax.grid(which="minor", color="white", linewidth=1.5)
    ax.tick_params(which="minor", length=0)
    if title:
        ax.set_title(title, fontsize=9, pad=22)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

