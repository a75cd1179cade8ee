"""The s-expression front end, serialization, and the command-line contract."""

import io
import json
import os
from pathlib import Path
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from orderp.algebra import (
    DVRSpec,
    Monic,
    extend,
    integers,
    integers_mod,
    localization,
    padic_ring,
    polynomial_ring,
)
from orderp.cli import (
    EXIT_FAIL,
    EXIT_INVALID,
    EXIT_OK,
    KindError,
    UndefinedName,
    ValidationError,
    deserialize,
    execute,
    main,
    parse_program,
    serialize,
)
from orderp.congruence import CongruenceDatum, kernel_hopf, universal_datum
from orderp.padic import PRECISION_ENV, derive_w_constants
from orderp.sexpr import ParseError, eval_element, eval_ring, read_all, read_one
from orderp.tate_oort import FROM, TOWARD, Section, TateOortTriple
from orderp.weil import FiniteFreeExtension, Ideal

from helpers import cyclotomic_local, eisenstein_dvr, ramified_padic

GOLDEN = Path(__file__).parent / "golden"
SESSIONS = json.loads((GOLDEN / "sessions.json").read_text())


def run(argv, cwd=GOLDEN):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        code = main(argv, out, err)
    finally:
        os.chdir(old)
    return code, out.getvalue(), err.getvalue()


# -- reader ------------------------------------------------------------------


def test_reader_positions_and_comments():
    forms = read_all("; note\n(a (b 12)\n   :k \"s t\")\n")
    assert len(forms) == 1
    f = forms[0]
    assert (f.line, f.col) == (2, 1)
    assert f[1][1] == 12 and (f[1][1].line, f[1][1].col) == (2, 7)
    assert f[2] == ":k" and f[3] == "s t"


@pytest.mark.parametrize(
    "text, where",
    [("(ring", "1:6"), ("(a))", "1:4"), ('(a "x', "1:6"), ("", "1:1")],
)
def test_parse_errors_carry_locations(text, where):
    with pytest.raises(ParseError) as info:
        read_one(text)
    assert str(info.value).startswith(where)


def test_ring_and_element_expressions():
    R = eval_ring(read_one("(local (quo (poly (int) (z)) (monic z (+ (^ z 2) z 1))) 3)"))
    assert R == cyclotomic_local(3)
    z = R.gen("z")
    assert eval_element(read_one("(- 1 z)"), R) == 1 - z
    assert eval_element(read_one("(/ (+ 2 (* 4 z)) 2)"), R) == 1 + 2 * z
    with pytest.raises(ParseError):
        eval_element(read_one("(/ 3 2)"), integers())
    Q = eval_ring(read_one("(rat)"))
    assert eval_element(read_one("(/ 3 2)"), Q) * 2 == 3
    with pytest.raises(ParseError):
        eval_element(read_one("(/ 1 3)"), integers_mod(9))
    with pytest.raises(ParseError):
        eval_ring(read_one("(poly Z x)"))


def test_program_errors():
    with pytest.raises(UndefinedName):
        parse_program("(check kernel Q)")
    with pytest.raises(KindError):
        parse_program("(ring R (int))\n(check kernel R)")
    with pytest.raises(ValidationError) as info:
        parse_program("(ring R (int))\n(congruence D :p 3 :ring R :lambda 1 :mu 2)")
    assert str(info.value).startswith("2:1:")
    with pytest.raises(ParseError):
        parse_program("(frobnicate 1)")


# -- serialization -------------------------------------------------------------


def sample_values():
    R3 = localization(integers(), 3)
    Zz = cyclotomic_local(3)
    z = Zz.gen("z")
    dvr = eisenstein_dvr(3, 3)
    T = TateOortTriple(3, R3, -3, 1)
    Zi_ext = _gaussian()
    i = Zi_ext.total.gen("i")
    return [
        integers(),
        integers_mod(9),
        padic_ring(5, 7),
        ramified_padic(3, 6),
        Zz,
        universal_datum(3).ring,
        z * 3 - 1,
        CongruenceDatum(3, R3, 1, 3),
        universal_datum(2),
        CongruenceDatum(3, dvr.ring, dvr.uniformizer, dvr.uniformizer),
        T,
        Section(T, FROM, 1),
        Section(TateOortTriple(3, R3, 1, -3), TOWARD, -1),
        dvr,
        DVRSpec(Zz, 1 - z, {"z": 1}),
        Zi_ext,
        Ideal(Zi_ext.total, [2 + 2 * i, 3 * i]),
        derive_w_constants(5, 12),
        kernel_hopf(universal_datum(3)),
    ]


def _gaussian():
    S = polynomial_ring(integers(), ["i"])
    B = extend(integers(), ["i"], [Monic("i", S.gen("i") ** 2 + 1)])
    return FiniteFreeExtension(integers(), B)


def _same(a, b):
    if isinstance(a, FiniteFreeExtension):
        return a.base == b.base and a.total == b.total
    if isinstance(a, DVRSpec):
        return (a.ring, a.uniformizer, a.residue_assignment) == (b.ring, b.uniformizer, b.residue_assignment)
    if hasattr(a, "antipode"):
        return (a.datum, a.algebra, a.law, a.antipode) == (b.datum, b.algebra, b.law, b.antipode)
    if hasattr(a, "values") and hasattr(a, "precision"):
        return (a.prime, a.precision, a.values) == (b.prime, b.precision, b.values)
    return a == b


@pytest.mark.parametrize("value", sample_values(), ids=lambda v: type(v).__name__)
def test_serialize_round_trip(value):
    text = serialize(value)
    back = deserialize(text)
    assert _same(back, value)
    assert serialize(back) == text


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3), st.sampled_from(["Zz", "Zpi", "O"]))
def test_element_round_trip(coeffs, which):
    if which == "Zz":
        R = cyclotomic_local(3)
        g = R.gen("z")
    elif which == "Zpi":
        R = ramified_padic(5, 6)
        g = R.gen("pi")
    else:
        R = universal_datum(3).ring
        g = R.gen("E") + 2 * R.gen("F")
    e = sum((c * g ** k for k, c in enumerate(coeffs)), R.zero())
    assert deserialize(serialize(e)) == e


def test_hopf_deserialization_checks_fields():
    text = serialize(kernel_hopf(universal_datum(2)))
    tampered = text.replace(":antipode x", ":antipode (* 2 x)")
    with pytest.raises(ValidationError):
        deserialize(tampered)


# -- execution and the CLI -----------------------------------------------------


def test_failures_become_verdicts():
    program = parse_program(
        "(ring Zl (local (int) 3))\n(triple T :p 3 :ring Zl :a -3 :b 1)\n(functor tgc2tcg T 0)"
    )
    report = execute(program)
    assert report.exit_status == EXIT_FAIL
    [verdict] = report.entries[0].verdicts
    assert verdict.name == "error" and "NotACogenerator" in verdict.detail


def test_json_and_text_carry_the_same_content():
    code_t, text, _ = run(["classify", "--input", "classify.gps"])
    code_j, raw, _ = run(["classify", "--input", "classify.gps", "--format", "json"])
    assert code_t == code_j == EXIT_OK
    data = json.loads(raw)
    lines = []
    for c in data["commands"]:
        lines.append(f"> {c['command']}")
        for v in c["verdicts"]:
            tag = "PASS" if v["passed"] else "FAIL"
            lines.append(f"  [{tag}] {v['name']}" + (f": {v['detail']}" if v["detail"] else ""))
        lines.extend(f"  {k} = {s}" for k, s in c["outputs"].items())
    lines.append(f"summary: {data['passed']} passed, {data['failed']} failed, exit {data['exit_status']}")
    assert "\n".join(lines) + "\n" == text


def test_precision_environment(monkeypatch):
    monkeypatch.setenv(PRECISION_ENV, "12")
    code, out, _ = run(["w", "--p", "3"])
    assert code == EXIT_OK and "(w :p 3 :prec 12)" in out
    monkeypatch.setenv(PRECISION_ENV, "zero")
    code, _, err = run(["w", "--p", "3"])
    assert code == EXIT_INVALID and err.startswith("error:")


def test_usage_errors_exit_two():
    assert run(["no-such-command"])[0] == EXIT_INVALID
    assert run(["run", "missing-file.gps"])[0] == EXIT_INVALID
    assert run(["functor", "--input", "functor.gps"])[0] == EXIT_INVALID


@pytest.mark.parametrize("session", SESSIONS, ids=lambda s: s["name"])
def test_golden_session(session):
    code, out, err = run(session["argv"])
    assert code == session["exit"]
    assert out == (GOLDEN / f"{session['name']}.out").read_text()
    assert err == (GOLDEN / f"{session['name']}.err").read_text()


@pytest.mark.parametrize("session", SESSIONS, ids=lambda s: s["name"])
def test_golden_session_as_a_process(session):
    proc = subprocess.run(
        [sys.executable, "-m", "orderp", *session["argv"]],
        cwd=GOLDEN,
        capture_output=True,
        text=True,
        env={k: v for k, v in os.environ.items() if k != PRECISION_ENV},
    )
    assert proc.returncode == session["exit"]
    assert proc.stdout == (GOLDEN / f"{session['name']}.out").read_text()
    assert proc.stderr == (GOLDEN / f"{session['name']}.err").read_text()
