"""Line-oriented text formats for instances, solutions, and source problems.

One directive per line, `#` starts a comment.  Instance documents:

    candidates <name> ...
    preferred <name>
    rule plurality|kapproval <k>|veto|borda|copeland <num>/<den>|maximin|spav
    budget <int>
    vote <name> ... [approve <l>]          (one line per voter, in order)
    swapprices <voter>                     (followed by m rows of m entries)
    shiftprices <voter> <rho1> <rho2> ...  (rho(0)=0 implicit)
    sigma <voter> <delta>:<cost> ...

`x` denotes a FORBIDDEN price; voters are 1-indexed.  Serialization is
canonical: equal instances produce byte-identical documents.

Solution documents hold `solver`, `swap <voter> <upper> <lower>`,
`shift <voter> <k>`, `threshold <voter> <delta>`, `cost`, `winners`, and
`replay` lines; they are emitted only after the replay harness verifies
them against their instance.
"""

from __future__ import annotations

from .bribery import BriberyInstance, BriberySolution, apply_solution, \
    verify_solution
from .costs import FORBIDDEN, Cost, is_forbidden
from .elections import CandidateSet, Election, Preference, Rule, SPAVVote, \
    winners
from .errors import ParseError, ReplayError, SwapBribeError, ValidationError
from .solvers import PartialPreference, PossibleWinnerInstance
from .reductions import BBInstance, X3CInstance
from .swaps import ShiftPriceFn, SwapPriceFn, SwapSequence, ThresholdPriceFn, \
    UnitSwap


def _fmt_cost(cost: Cost) -> str:
    return "x" if is_forbidden(cost) else str(cost)


def _parse_cost(token: str, line: int) -> Cost:
    if token == "x":
        return FORBIDDEN
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line, f"bad cost {token!r}") from None
    if value < 0:
        raise ParseError(line, f"negative cost {value}")
    return value


def _rule_tokens(rule: Rule) -> str:
    return str(rule)


def _parse_rule(tokens: list[str], line: int) -> Rule:
    try:
        kind = tokens[0]
        if kind == "plurality":
            return Rule.plurality()
        if kind == "veto":
            return Rule.veto()
        if kind == "borda":
            return Rule.borda()
        if kind == "maximin":
            return Rule.maximin()
        if kind == "spav":
            return Rule.spav()
        if kind == "kapproval":
            return Rule.k_approval(int(tokens[1]))
        if kind == "copeland":
            num, den = tokens[1].split("/") if "/" in tokens[1] \
                else (tokens[1], "1")
            return Rule.copeland(int(num), int(den))
    except (IndexError, ValueError, SwapBribeError) as exc:
        raise ParseError(line, f"bad rule: {exc}") from None
    raise ParseError(line, f"unknown rule {tokens[0]!r}")


def serialize_instance(instance: BriberyInstance) -> str:
    election = instance.election
    cset = election.candidates
    out = [
        "candidates " + " ".join(cset.names),
        "preferred " + cset.name(instance.preferred),
        "rule " + _rule_tokens(instance.rule),
        f"budget {instance.budget}",
    ]
    for vote in election.votes:
        line = "vote " + " ".join(cset.name(c) for c in vote.ranking)
        if isinstance(vote, SPAVVote):
            line += f" approve {vote.threshold}"
        out.append(line)
    for voter in range(election.n):
        if instance.swap_prices is not None:
            out.append(f"swapprices {voter + 1}")
            table = instance.swap_prices[voter].table
            for i in range(cset.m):
                row = ["0" if i == j else _fmt_cost(table[i][j])
                       for j in range(cset.m)]
                out.append(" ".join(row))
        if instance.shift_prices is not None:
            rho = instance.shift_prices[voter].rho
            body = " ".join(_fmt_cost(c) for c in rho[1:])
            out.append(f"shiftprices {voter + 1} {body}".rstrip())
        if instance.threshold_prices is not None:
            entries = instance.threshold_prices[voter].deltas
            body = " ".join(f"{d}:{cost}" for d, cost in sorted(entries.items())
                            if d != 0)
            out.append(f"sigma {voter + 1} {body}".rstrip())
    return "\n".join(out) + "\n"


def parse_instance(text: str) -> BriberyInstance:
    lines = text.splitlines()
    names: list[str] | None = None
    preferred: str | None = None
    rule: Rule | None = None
    budget: int | None = None
    votes: list[tuple[int, list[str], int | None]] = []
    swap_tables: dict[int, list[list[Cost]]] = {}
    shift_tables: dict[int, list[Cost]] = {}
    sigma_tables: dict[int, dict[int, Cost]] = {}

    idx = 0
    total = len(lines)

    def strip(raw: str) -> list[str]:
        return raw.split("#", 1)[0].split()

    while idx < total:
        lineno = idx + 1
        tokens = strip(lines[idx])
        idx += 1
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        if directive == "candidates":
            if not args:
                raise ParseError(lineno, "candidates line needs names")
            names = args
        elif directive == "preferred":
            if len(args) != 1:
                raise ParseError(lineno, "preferred needs exactly one name")
            preferred = args[0]
        elif directive == "rule":
            rule = _parse_rule(args, lineno)
        elif directive == "budget":
            try:
                budget = int(args[0])
            except (IndexError, ValueError):
                raise ParseError(lineno, "budget needs one integer") from None
            if budget < 0:
                raise ParseError(lineno, "budget must be nonnegative")
        elif directive == "vote":
            threshold = None
            if "approve" in args:
                at = args.index("approve")
                if at != len(args) - 2:
                    raise ParseError(lineno, "approve takes one trailing count")
                try:
                    threshold = int(args[at + 1])
                except ValueError:
                    raise ParseError(lineno, "bad approval count") from None
                args = args[:at]
            if len(set(args)) != len(args):
                dup = next(a for a in args if args.count(a) > 1)
                raise ParseError(lineno, f"vote lists candidate {dup!r} twice")
            votes.append((lineno, args, threshold))
        elif directive == "swapprices":
            voter = _parse_voter(args, lineno, len(votes))
            if names is None:
                raise ParseError(lineno, "swapprices before candidates")
            table = []
            for _ in range(len(names)):
                if idx >= total:
                    raise ParseError(lineno, "truncated swap price table")
                row_tokens = strip(lines[idx])
                row_line = idx + 1
                idx += 1
                if len(row_tokens) != len(names):
                    raise ParseError(row_line,
                                     f"expected {len(names)} price entries")
                table.append([_parse_cost(tok, row_line) for tok in row_tokens])
            for i in range(len(names)):
                table[i][i] = 0
            swap_tables[voter] = table
        elif directive == "shiftprices":
            voter = _parse_voter(args[:1], lineno, len(votes))
            shift_tables[voter] = [0] + [_parse_cost(tok, lineno)
                                         for tok in args[1:]]
        elif directive == "sigma":
            voter = _parse_voter(args[:1], lineno, len(votes))
            entries: dict[int, Cost] = {0: 0}
            for token in args[1:]:
                if ":" not in token:
                    raise ParseError(lineno, f"bad sigma entry {token!r}")
                delta_text, cost_text = token.split(":", 1)
                try:
                    delta = int(delta_text)
                except ValueError:
                    raise ParseError(lineno, f"bad sigma delta {delta_text!r}") \
                        from None
                entries[delta] = _parse_cost(cost_text, lineno)
            sigma_tables[voter] = entries
        else:
            raise ParseError(lineno, f"unknown directive {directive!r}")

    if names is None:
        raise ParseError(total or 1, "missing candidates line")
    if preferred is None:
        raise ParseError(total or 1, "missing preferred line")
    if rule is None:
        raise ParseError(total or 1, "missing rule line")
    if budget is None:
        raise ParseError(total or 1, "missing budget line")
    try:
        cset = CandidateSet(names)
    except ValidationError as exc:
        raise ParseError(1, str(exc)) from None

    built_votes = []
    for lineno, tokens, threshold in votes:
        try:
            ranking = [cset.index(tok) for tok in tokens]
            pref = Preference(ranking)
            pref.validate(cset.m)
            if threshold is None:
                built_votes.append(pref)
            else:
                vote = SPAVVote(pref, threshold)
                vote.validate(cset.m)
                built_votes.append(vote)
        except ValidationError as exc:
            raise ParseError(lineno, str(exc)) from None

    try:
        election = Election(cset, built_votes)
        p = cset.index(preferred)
        swap = _collect(swap_tables, election.n, SwapPriceFn)
        shift = _collect(shift_tables, election.n, ShiftPriceFn)
        sigma = _collect(sigma_tables, election.n, ThresholdPriceFn)
        return BriberyInstance(election, rule, p, budget, swap_prices=swap,
                               shift_prices=shift, threshold_prices=sigma)
    except (ValidationError, SwapBribeError) as exc:
        raise ParseError(1, str(exc)) from None


def _parse_voter(args: list[str], line: int, num_votes: int) -> int:
    try:
        voter = int(args[0])
    except (IndexError, ValueError):
        raise ParseError(line, "price block needs a voter number") from None
    if not 1 <= voter <= num_votes:
        raise ParseError(line, f"voter {voter} has no vote yet (1-indexed)")
    return voter - 1


def _collect(tables: dict[int, object], n: int, builder):
    if not tables:
        return None
    missing = [str(i + 1) for i in range(n) if i not in tables]
    if missing:
        raise ValidationError(
            f"missing price tables for voters {', '.join(missing)}"
        )
    return tuple(builder(tables[i]) for i in range(n))


def serialize_solution(solution: BriberySolution, instance: BriberyInstance,
                       solver: str = "unknown") -> str:
    """Canonical solution document; verifies the replay before emitting."""
    try:
        verify_solution(instance, solution)
    except ReplayError as exc:
        raise ReplayError(f"refusing to serialize a broken solution: {exc}") \
            from exc
    cset = instance.election.candidates
    out = [f"solver {solver}"]
    if solution.shifts is not None:
        for voter, k in enumerate(solution.shifts):
            if k:
                out.append(f"shift {voter + 1} {k}")
    for voter, upper, lower in solution.swaps.swaps:
        out.append(f"swap {voter + 1} {cset.name(upper)} {cset.name(lower)}")
    if solution.threshold_deltas is not None:
        for voter, delta in enumerate(solution.threshold_deltas):
            if delta:
                out.append(f"threshold {voter + 1} {delta}")
    out.append(f"cost {solution.total_cost}")
    out.append("winners " + " ".join(
        cset.name(c) for c in sorted(solution.resulting_winners)))
    out.append("replay verified")
    return "\n".join(out) + "\n"


write_solution = serialize_solution


def parse_solution(text: str, instance: BriberyInstance) -> BriberySolution:
    """Parse and re-verify a solution document against its instance."""
    cset = instance.election.candidates
    n = instance.election.n
    shifts = [0] * n
    deltas = [0] * n
    saw_shift = saw_delta = False
    swaps = []
    cost: int | None = None
    declared_winners: frozenset[int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        try:
            if directive == "swap":
                swaps.append(UnitSwap(int(args[0]) - 1, cset.index(args[1]),
                                      cset.index(args[2])))
            elif directive == "shift":
                shifts[int(args[0]) - 1] = int(args[1])
                saw_shift = True
            elif directive == "threshold":
                deltas[int(args[0]) - 1] = int(args[1])
                saw_delta = True
            elif directive == "cost":
                cost = int(args[0])
            elif directive == "winners":
                declared_winners = frozenset(cset.index(name) for name in args)
            elif directive in ("solver", "replay"):
                continue
            else:
                raise ParseError(lineno, f"unknown directive {directive!r}")
        except (IndexError, ValueError, ValidationError) as exc:
            raise ParseError(lineno, f"bad {directive} line: {exc}") from None
    if cost is None:
        raise ParseError(1, "missing cost line")
    seq = SwapSequence(swaps, 0)
    trial = BriberySolution(seq, tuple(shifts) if saw_shift else None,
                            tuple(deltas) if saw_delta else None,
                            cost, frozenset())
    election, _ = apply_solution(instance, trial)
    outcome = frozenset(winners(election, instance.rule))
    if declared_winners is not None and declared_winners != outcome:
        raise ReplayError(
            f"document claims winners {sorted(declared_winners)} but the "
            f"replay yields {sorted(outcome)}"
        )
    solution = BriberySolution(trial.swaps, trial.shifts,
                               trial.threshold_deltas, cost, outcome)
    return verify_solution(instance, solution)


def serialize_x3c(x3c: X3CInstance) -> str:
    out = [f"x3c {x3c.k}", "ground " + " ".join(x3c.ground)]
    for members in x3c.sets:
        out.append("set " + " ".join(x3c.ground[b] for b in members))
    return "\n".join(out) + "\n"


def serialize_bb(bb: BBInstance) -> str:
    out = [f"bb {bb.n} {bb.k}"]
    for u, w in sorted(bb.edges):
        out.append(f"edge u{u + 1} w{w + 1}")
    return "\n".join(out) + "\n"


def parse_source(text: str):
    """Parse an X3C or BB source document (whichever header appears)."""
    kind = None
    k = n = None
    ground: list[str] | None = None
    sets: list[list[int]] = []
    edges: list[tuple[int, int]] = []
    set_lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        if directive == "x3c":
            kind = "x3c"
            try:
                k = int(args[0])
            except (IndexError, ValueError):
                raise ParseError(lineno, "x3c needs an integer k") from None
        elif directive == "bb":
            kind = "bb"
            try:
                n, k = int(args[0]), int(args[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "bb needs n and k") from None
        elif directive == "ground":
            ground = args
        elif directive == "set":
            set_lines.append((lineno, args))
        elif directive == "edge":
            try:
                u, w = args
                edges.append((int(u.lstrip("u")) - 1, int(w.lstrip("w")) - 1))
            except (IndexError, ValueError):
                raise ParseError(lineno, "edge needs u<i> w<j>") from None
        else:
            raise ParseError(lineno, f"unknown directive {directive!r}")
    if kind == "x3c":
        if ground is None:
            labels = sorted({label for _, line in set_lines for label in line})
            ground = labels
        index = {label: i for i, label in enumerate(ground)}
        for lineno, line in set_lines:
            try:
                sets.append([index[label] for label in line])
            except KeyError as exc:
                raise ParseError(lineno, f"unknown ground label {exc}") from None
        try:
            return X3CInstance.of(k, ground, sets)
        except ValidationError as exc:
            raise ParseError(1, str(exc)) from None
    if kind == "bb":
        try:
            return BBInstance.of(n, k, edges)
        except ValidationError as exc:
            raise ParseError(1, str(exc)) from None
    raise ParseError(1, "missing x3c or bb header")


def serialize_pw(pw: PossibleWinnerInstance) -> str:
    cset = pw.candidates
    out = [
        "candidates " + " ".join(cset.names),
        "preferred " + cset.name(pw.preferred),
        "rule " + _rule_tokens(pw.rule),
    ]
    for partial in pw.votes:
        pairs = " ".join(f"{cset.name(a)}>{cset.name(b)}"
                         for a, b in sorted(partial.pairs))
        out.append(("pvote " + pairs).rstrip())
    return "\n".join(out) + "\n"


def parse_pw(text: str) -> PossibleWinnerInstance:
    names: list[str] | None = None
    preferred: str | None = None
    rule: Rule | None = None
    votes: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        if directive == "candidates":
            names = args
        elif directive == "preferred":
            preferred = args[0] if args else None
        elif directive == "rule":
            rule = _parse_rule(args, lineno)
        elif directive == "pvote":
            votes.append((lineno, args))
        else:
            raise ParseError(lineno, f"unknown directive {directive!r}")
    if names is None or preferred is None or rule is None:
        raise ParseError(1, "pw document needs candidates, preferred, rule")
    cset = CandidateSet(names)
    partials = []
    for lineno, tokens in votes:
        pairs = []
        for token in tokens:
            if ">" not in token:
                raise ParseError(lineno, f"bad comparison {token!r}")
            a, b = token.split(">", 1)
            pairs.append((cset.index(a), cset.index(b)))
        try:
            partials.append(PartialPreference.from_pairs(cset.m, pairs))
        except ValidationError as exc:
            raise ParseError(lineno, str(exc)) from None
    return PossibleWinnerInstance(cset, tuple(partials), rule,
                                  cset.index(preferred))
