//! Appendix fixtures shared by the integration tests.
#![allow(dead_code)]

use magic_core::classify::classify;
use magic_core::manifold::{equivalent, parse_manifold, EqualityVerdict};
use magic_core::slope::{parse_slope, FillingSpec, Slope};

pub fn s(x: &str) -> Slope {
    parse_slope(x).unwrap()
}

pub fn spec(xs: &[Slope]) -> FillingSpec {
    FillingSpec::new(xs.to_vec()).unwrap()
}

/// Compares the classifier's output on `slopes` with a printed manifold.
pub fn agrees(slopes: &[Slope], printed: &str) -> Result<(), String> {
    let c = classify(&spec(slopes));
    let Some(got) = c.manifold else {
        return Err(format!("{} classified hyperbolic, expected {printed}", spec(slopes)));
    };
    let want = parse_manifold(printed).map_err(|e| format!("fixture `{printed}`: {e}"))?;
    match equivalent(&got, &want).map_err(|e| e.to_string())? {
        EqualityVerdict::Equal { .. } => Ok(()),
        v => Err(format!("{}: got {got}, printed {printed}: {}", spec(slopes), v.label())),
    }
}

/// A one-cusped N(α,β) with its non-hyperbolic fillings as printed.
pub struct PointTable {
    pub name: &'static str,
    pub base: [&'static str; 2],
    pub rows: &'static [(&'static [&'static str], &'static str)],
}

macro_rules! glue {
    ($l:expr, $m:expr, $r:expr) => {
        concat!($l, " U", $m, " ", $r)
    };
}

/// The e ≥ 7 manifolds.
pub fn large_e_tables() -> Vec<PointTable> {
    vec![
        PointTable {
            name: "N(1,2)",
            base: ["1", "2"],
            rows: &[
                (&["inf"], "S3"),
                (&["-3", "5"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,0]", "SFS(D;(2,1),(3,1))")),
                (&["-2", "4"], "SFS(S2;(3,1),(3,1),(4,1);-1)"),
                (&["-1", "3"], "SFS(S2;(2,1),(4,1),(5,1);-1)"),
                (&["0", "2"], "SFS(S2;(2,1),(3,1),(7,1);-1)"),
                (&["1"], "T[3,1;-1,0]"),
            ],
        },
        PointTable {
            name: "N(1,-4)",
            base: ["1", "-4"],
            rows: &[
                (&["-1"], "L(10,3)"),
                (&["-1/2", "-2"], "SFS(S2;(2,1),(3,2),(3,2);-1)"),
                (&["-1/3", "-3"], glue!("SFS(D;(2,1),(2,1))", "[0,1;-1,-1]", "SFS(D;(2,1),(3,1))")),
                (&["0", "inf"], "L(5,1)"),
                (&["1"], "T[-3,1;-1,0]"),
            ],
        },
        PointTable {
            name: "N(1,3)",
            base: ["1", "3"],
            rows: &[
                (&["inf"], "RP3"),
                (&["-3"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,0]", "SFS(D;(2,1),(4,1))")),
                (&["-2"], "SFS(S2;(3,1),(3,1),(5,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(4,1),(6,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(8,1);-1)"),
                (&["1"], "T[4,1;-1,0]"),
                (&["2"], "SFS(S2;(2,1),(4,1),(5,1);-1)"),
                (&["3"], glue!("SFS(D;(2,1),(2,1))", "[1,2;0,-1]", "SFS(D;(2,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(1,-3/2)",
            base: ["1", "-3/2"],
            rows: &[
                (&["inf"], "L(5,2)"),
                (&["-3"], "SFS(S2;(2,1),(2,1),(3,2);0)"),
                (&["-2"], "L(15,4)"),
                (&["-1"], "SFS(S2;(2,1),(3,2),(4,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(7,2);-1)"),
                (&["1"], "SFS(A;(2,1)) /[1,1;1,0]"),
                (&["-5/2"], glue!("SFS(D;(2,1),(3,1))", "[1,1;0,-1]", "SFS(D;(2,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(1,-1/2)",
            base: ["1", "-1/2"],
            rows: &[
                (&["inf"], "L(3,1)"),
                (&["-4"], "SFS(S2;(2,1),(3,2),(3,2);-1)"),
                (&["-3"], "SFS(S2;(2,1),(2,1),(5,3);-1)"),
                (&["-2"], "SFS(S2;(3,1),(3,1),(3,2);-1)"),
                (&["-1"], "SFS(S2;(2,1),(4,1),(5,2);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(9,2);-1)"),
                (&["1"], "SFS(A;(2,1)) /[0,1;1,0]"),
            ],
        },
        PointTable {
            name: "N(1,-5/2)",
            base: ["1", "-5/2"],
            rows: &[
                (&["inf"], "L(7,2)"),
                (&["-3"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,-1]", "SFS(D;(2,1),(3,1))")),
                (&["-2"], "L(21,8)"),
                (&["-3/2"], glue!("SFS(D;(2,1),(3,1))", "[1,1;0,-1]", "SFS(D;(2,1),(3,1))")),
                (&["-1"], "L(14,3)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(5,2);-1)"),
                (&["1"], "SFS(A;(2,1)) /[2,1;1,0]"),
            ],
        },
        PointTable {
            name: "N(1,4)",
            base: ["1", "4"],
            rows: &[
                (&["inf"], "L(3,1)"),
                (&["-3"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,0]", "SFS(D;(2,1),(5,1))")),
                (&["-2"], "SFS(S2;(3,1),(3,1),(6,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(4,1),(7,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(9,1);-1)"),
                (&["1"], "T[5,1;-1,0]"),
                (&["2"], "SFS(S2;(3,1),(3,1),(4,1);-1)"),
            ],
        },
        PointTable {
            name: "N(1,5)",
            base: ["1", "5"],
            rows: &[
                (&["inf"], "L(4,1)"),
                (&["-3"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,0]", "SFS(D;(2,1),(6,1))")),
                (&["-2"], "SFS(S2;(3,1),(3,1),(7,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(4,1),(8,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(10,1);-1)"),
                (&["1"], "T[6,1;-1,0]"),
                (&["2"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,0]", "SFS(D;(2,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(1,-1/3)",
            base: ["1", "-1/3"],
            rows: &[
                (&["inf"], "L(4,1)"),
                (&["-4"], glue!("SFS(D;(2,1),(2,1))", "[0,1;-1,-1]", "SFS(D;(2,1),(3,1))")),
                (&["-3"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,1]", "SFS(D;(2,1),(2,1))")),
                (&["-2"], "SFS(S2;(3,1),(3,1),(5,3);-1)"),
                (&["-1"], "SFS(S2;(2,1),(4,1),(8,3);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(14,3);-1)"),
                (&["1"], "SFS(A;(3,2)) /[0,1;1,0]"),
            ],
        },
        PointTable {
            name: "N(-4,-1/3)",
            base: ["-4", "-1/3"],
            rows: &[
                (&["inf"], "S3"),
                (&["-3"], glue!("SFS(D;(2,1),(2,1))", "[-1,1;0,-1]", "SFS(D;(2,1),(3,1))")),
                (&["-2"], "SFS(S2;(2,1),(3,2),(5,2);-1)"),
                (&["-1"], "L(18,5)"),
                (&["-1/2"], glue!("SFS(D;(2,1),(3,1))", "[1,1;-2,-1]", "SFS(D;(2,1),(3,1))")),
                (&["0"], "L(19,7)"),
                (&["1"], glue!("SFS(D;(2,1),(2,1))", "[0,1;-1,-1]", "SFS(D;(2,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(2,2)",
            base: ["2", "2"],
            rows: &[
                (&["inf"], "L(3,1)"),
                (&["-3"], glue!("SFS(D;(2,1),(3,1))", "[0,1;1,0]", "SFS(D;(2,1),(3,1))")),
                (&["-2"], "SFS(S2;(3,1),(4,1),(4,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(5,1),(5,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(8,1);-1)"),
                (&["1"], "SFS(S2;(2,1),(3,1),(7,1);-1)"),
                (&["2"], glue!("SFS(D;(2,1),(2,1))", "[2,3;-1,-2]", "SFS(D;(2,1),(3,1))")),
            ],
        },
    ]
}

/// The sporadic e = 6 manifolds.
pub fn sporadic_six_tables() -> Vec<PointTable> {
    vec![
        PointTable {
            name: "N(-5,-5)",
            base: ["-5", "-5"],
            rows: &[
                (&["inf"], "L(24,5)"),
                (&["-3"], glue!("SFS(D;(2,1),(4,1))", "[1,1;0,-1]", "SFS(D;(2,1),(4,1))")),
                (&["-2"], "SFS(S2;(3,1),(3,1),(3,2);0)"),
                (&["-1"], "SFS(S2;(2,1),(2,1),(2,1);0)"),
                (&["-1/2"], "SFS(A;(2,1)) /[0,1;1,0]"),
                (&["0"], "SFS(S2;(2,1),(3,2),(6,1);-1)"),
            ],
        },
        PointTable {
            name: "N(-5/3,-5/3)",
            base: ["-5/3", "-5/3"],
            rows: &[
                (&["inf"], "L(16,7)"),
                (&["-5/2"], glue!("SFS(D;(2,1),(2,1))", "[-1,1;0,-1]", "SFS(D;(2,1),(3,1))")),
                (&["-3"], "SFS(K;;1)"),
                (&["-2"], "L(16,5)"),
                (&["-1"], "SFS(S2;(2,1),(4,3),(4,3);-1)"),
                (&["0"], glue!("SFS(D;(2,1),(3,1))", "[1,1;-1,0]", "SFS(D;(3,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(-7/3,-7/3)",
            base: ["-7/3", "-7/3"],
            rows: &[
                (&["inf"], "L(40,11)"),
                (&["-3"], glue!("SFS(D;(2,1),(4,1))", "[1,1;0,-1]", "SFS(D;(2,1),(4,1))")),
                (&["-2"], "L(20,7)"),
                (&["-3/2"], "SFS(A;(2,1)) /[1,1;1,0]"),
                (&["-1"], "SFS(S2;(2,1),(2,1),(2,1);1)"),
                (&["0"], glue!("SFS(D;(2,1),(3,1))", "[1,1;1,0]", "SFS(D;(3,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(2,3)",
            base: ["2", "3"],
            rows: &[
                (&["inf"], "L(5,2)"),
                (&["-3"], glue!("SFS(D;(2,1),(3,1))", "[0,1;1,0]", "SFS(D;(2,1),(4,1))")),
                (&["-2"], "SFS(S2;(3,1),(4,1),(5,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(5,1),(6,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(9,1);-1)"),
                (&["1"], "SFS(S2;(2,1),(4,1),(5,1);-1)"),
            ],
        },
        PointTable {
            name: "N(2,4)",
            base: ["2", "4"],
            rows: &[
                (&["inf"], "L(7,2)"),
                (&["-3"], glue!("SFS(D;(2,1),(3,1))", "[0,1;1,0]", "SFS(D;(2,1),(5,1))")),
                (&["-2"], "SFS(S2;(3,1),(4,1),(6,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(5,1),(7,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(10,1);-1)"),
                (&["1"], "SFS(S2;(3,1),(3,1),(4,1);-1)"),
            ],
        },
        PointTable {
            name: "N(2,5)",
            base: ["2", "5"],
            rows: &[
                (&["inf"], "L(9,2)"),
                (&["-3"], glue!("SFS(D;(2,1),(3,1))", "[0,1;1,0]", "SFS(D;(2,1),(6,1))")),
                (&["-2"], "SFS(S2;(3,1),(4,1),(7,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(5,1),(8,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(11,1);-1)"),
                (&["1"], glue!("SFS(D;(2,1),(2,1))", "[0,1;1,0]", "SFS(D;(2,1),(3,1))")),
            ],
        },
        PointTable {
            name: "N(3,3)",
            base: ["3", "3"],
            rows: &[
                (&["inf"], "L(8,3)"),
                (&["-3"], glue!("SFS(D;(2,1),(4,1))", "[0,1;1,0]", "SFS(D;(2,1),(4,1))")),
                (&["-2"], "SFS(S2;(3,1),(5,1),(5,1);-1)"),
                (&["-1"], "SFS(S2;(2,1),(6,1),(6,1);-1)"),
                (&["0"], "SFS(S2;(2,1),(3,1),(10,1);-1)"),
                (&["1"], glue!("SFS(D;(2,1),(2,1))", "[1,2;0,-1]", "SFS(D;(2,1),(3,1))")),
            ],
        },
    ]
}

/// Checks every printed filling of a point table and that the listed slopes are all of
/// the exceptional ones.
pub fn check_point_table(t: &PointTable) -> Vec<String> {
    let base = [s(t.base[0]), s(t.base[1])];
    let mut errs = vec![];
    let mut listed = vec![];
    for (slopes, printed) in t.rows {
        for x in *slopes {
            listed.push(s(x));
            if let Err(e) = agrees(&[base[0], base[1], s(x)], printed) {
                errs.push(format!("{}: {e}", t.name));
            }
        }
    }
    listed.sort();
    match magic_core::exceptional::exceptional_slopes(&base) {
        Ok(r) if r.slopes == listed => {}
        Ok(r) => errs.push(format!("{}: E = {:?}, listed {:?}", t.name, r.slopes, listed)),
        Err(e) => errs.push(format!("{}: {e}", t.name)),
    }
    errs
}

/// Which r/s a row of a parametric table covers.
#[derive(Clone, Copy, Debug)]
pub enum Family {
    Any,
    /// r/s = c + 1/n.
    Recip(i64),
    NotRecip(i64),
    Int,
    NotInt,
    /// A single slope p/q.
    Exact(i64, i64),
    /// Not an integer and not p/q.
    NotIntNot(i64, i64),
    /// Not c, and not c + 1/n.
    NotRecipNot(i64),
}

/// A row of a table of fillings N(α, r/s, p/q): the formula gets (r, s, n).
pub struct ParamRow {
    pub fill: &'static str,
    pub family: Family,
    pub formula: fn(i64, i64, i64) -> String,
}

pub struct ParamTable {
    pub name: &'static str,
    pub alpha: &'static str,
    pub excluded: &'static [&'static str],
    pub rows: Vec<ParamRow>,
}

fn row(fill: &'static str, family: Family, formula: fn(i64, i64, i64) -> String) -> ParamRow {
    ParamRow { fill, family, formula }
}

pub fn param_tables() -> Vec<ParamTable> {
    use Family::*;
    vec![
        ParamTable {
            name: "N(1)",
            alpha: "1",
            excluded: &["inf", "-4", "-3", "-5/2", "-2", "-3/2", "-1", "-1/2", "-1/3", "0", "1/2", "1", "2", "3", "4", "5"],
            rows: vec![
                row("inf", Any, |r, s, _| format!("L({},{})", r - s, s)),
                row("-3", Recip(-1), |_, _, n| format!("SFS(S2;(2,1),(2,1),({},-2);0)", 2 * n + 1)),
                row("-3", NotRecip(-1), |r, s, _| format!("SFS(D;(2,1),(2,1)) U[0,1;1,0] SFS(D;(2,1),({},{s}))", r + s)),
                row("-2", Recip(-2), |_, _, n| format!("L({},{})", 9 * n - 3, 3 * n - 2)),
                row("-2", NotRecip(-2), |r, s, _| format!("SFS(S2;(3,-2),(3,1),({},{s});0)", r + 2 * s)),
                row("-1", Recip(-3), |_, _, n| format!("L({},{})", 8 * n - 2, 4 * n + 1)),
                row("-1", NotRecip(-3), |r, s, _| format!("SFS(S2;(2,-1),(4,1),({},{s});0)", r + 3 * s)),
                row("0", Exact(-5, 1), |_, _, _| "RP3 # L(3,1)".to_string()),
                row("0", Recip(-5), |_, _, n| format!("L({},{})", 6 * n - 1, 2 * n - 1)),
                row("0", NotRecipNot(-5), |r, s, _| format!("SFS(S2;(2,-1),(3,1),({},{s});0)", r + 5 * s)),
                row("1", Int, |r, _, _| format!("T[{},1;-1,0]", r + 1)),
                row("1", NotInt, |r, s, _| format!("SFS(A;({s},{})) /[0,1;1,0]", r + s)),
            ],
        },
        ParamTable {
            name: "N(-3/2)",
            alpha: "-3/2",
            excluded: &["inf", "-4", "-3", "-8/3", "-5/2", "-7/3", "-2", "-3/2", "-1", "-1/2", "0", "1"],
            rows: vec![
                row("inf", Any, |r, s, _| format!("L({},{})", 3 * r + 2 * s, r + s)),
                row("-3", Recip(-1), |_, _, n| format!("L({},{})", 6 * n + 7, 3 * n + 2)),
                row("-3", NotRecip(-1), |r, s, _| format!("SFS(S2;(2,1),(3,2),({},{s});0)", r + s)),
                row("-5/2", Recip(-2), |_, _, n| format!("SFS(S2;(2,1),(3,-1),({},2);0)", 2 * n - 1)),
                row("-5/2", NotRecip(-2), |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;0,-1] SFS(D;(2,1),({},{s}))", r + 2 * s)),
                row("-2", Any, |r, s, _| format!("L({},{})", 4 * r + 11 * s, r + 3 * s)),
                row("-1", Recip(-3), |_, _, n| format!("L({},{})", 6 * n + 1, 3 * n + 2)),
                row("-1", NotRecip(-3), |r, s, _| format!("SFS(S2;(2,-1),(3,2),({},{s});0)", r + 3 * s)),
                row("0", Int, |r, _, _| format!("SFS(S2;(2,-1),(3,1),({},2);0)", 2 * r + 5)),
                row("0", NotInt, |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;-1,0] SFS(D;(2,1),({s},{}))", r + 2 * s)),
            ],
        },
        ParamTable {
            name: "N(-5/2)",
            alpha: "-5/2",
            excluded: &["inf", "-4", "-3", "-5/2", "-2", "-5/3", "-3/2", "-4/3", "-1", "-1/2", "0", "1"],
            rows: vec![
                row("inf", Any, |r, s, _| format!("L({},{})", 5 * r + 2 * s, 2 * r + s)),
                row("-3", Recip(-1), |_, _, n| format!("SFS(S2;(2,-1),(3,2),({},2);0)", 2 * n + 1)),
                row("-3", NotRecip(-1), |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;1,0] SFS(D;(2,1),({},{s}))", r + s)),
                row("-2", Any, |r, s, _| format!("L({},{})", 8 * r + 13 * s, 3 * r + 5 * s)),
                row("-3/2", Recip(-2), |_, _, n| format!("SFS(S2;(2,-1),(3,2),({},2);0)", 2 * n - 1)),
                row("-3/2", NotRecip(-2), |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;0,-1] SFS(D;(2,1),({},{s}))", r + 2 * s)),
                row("-1", Any, |r, s, _| format!("L({},{})", 3 * r + 11 * s, 2 * r + 7 * s)),
                row("0", Int, |r, _, _| format!("SFS(S2;(2,-1),(3,1),({},2);0)", 2 * r + 3)),
                row("0", NotInt, |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;0,1] SFS(D;(2,1),({s},{r}))")),
            ],
        },
        ParamTable {
            name: "N(-1/2)",
            alpha: "-1/2",
            excluded: &["inf", "-5", "-4", "-3", "-5/2", "-2", "-3/2", "-1", "0", "1"],
            rows: vec![
                row("inf", Any, |r, s, _| format!("L({},{s})", r + 2 * s)),
                row("-4", Exact(-1, 2), |_, _, _| "SFS(RP2;(2,1),(3,1);-1)".to_string()),
                row("-4", Int, |r, _, _| format!("SFS(S2;(2,-1),(3,2),({},2);0)", 2 * r + 1)),
                row("-4", NotIntNot(-1, 2), |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;1,0] SFS(D;(2,1),({s},{r}))")),
                row("-3", Recip(-1), |_, _, n| format!("L({},{})", 10 * n + 1, 5 * n - 2)),
                row("-3", NotRecip(-1), |r, s, _| format!("SFS(S2;(2,-1),(5,3),({},{s});0)", r + s)),
                row("-2", Recip(-2), |_, _, n| format!("L({},{})", 9 * n, 3 * n - 1)),
                row("-2", NotRecip(-2), |r, s, _| format!("SFS(S2;(3,-2),(3,2),({},{s});0)", r + 2 * s)),
                row("-1", Recip(-3), |_, _, n| format!("L({},{})", 10 * n - 1, 5 * n + 2)),
                row("-1", NotRecip(-3), |r, s, _| format!("SFS(S2;(2,-1),(5,2),({},{s});0)", r + 3 * s)),
                row("0", Exact(-7, 2), |_, _, _| "SFS(RP2;(2,1),(3,1);-1)".to_string()),
                row("0", Int, |r, _, _| format!("SFS(S2;(2,-1),(3,1),({},2);0)", 2 * r + 7)),
                row("0", NotIntNot(-7, 2), |r, s, _| format!("SFS(D;(2,1),(3,1)) U[1,1;2,3] SFS(D;(2,1),({s},{r}))")),
            ],
        },
    ]
}

fn recip_n(x: Slope, c: i64) -> Option<i64> {
    x.unit_offset_from(c)
}

/// Up to `count` probe values (r, s, n) for a row, smallest height first.
pub fn probes(t: &ParamTable, row: &ParamRow, count: usize) -> Vec<(i64, i64, i64)> {
    let excluded: Vec<Slope> = t.excluded.iter().map(|x| s(x)).collect();
    let mut pool: Vec<Slope> = vec![];
    for h in 1..=40i64 {
        for q in 1..=h {
            for p in [-h, h] {
                if let Ok(x) = Slope::new(p, q) {
                    if !pool.contains(&x) {
                        pool.push(x);
                    }
                }
            }
            for p in -h..=h {
                if let Ok(x) = Slope::new(p, h) {
                    if !pool.contains(&x) {
                        pool.push(x);
                    }
                }
            }
        }
    }
    if let Family::Recip(c) = row.family {
        let ns = (1..).flat_map(|k: i64| [k, -k]);
        return ns
            .map(|n| (n, Slope::frac(c * n + 1, n)))
            .filter(|(_, x)| !excluded.contains(x))
            .take(count)
            .map(|(n, x)| (x.p(), x.q(), n))
            .collect();
    }
    let mut out = vec![];
    for x in pool {
        if excluded.contains(&x) {
            continue;
        }
        let n = match row.family {
            Family::Any => Some(0),
            Family::Recip(c) => recip_n(x, c),
            Family::NotRecip(c) => recip_n(x, c).is_none().then_some(0),
            Family::Int => x.as_integer(),
            Family::NotInt => (!x.is_integer()).then_some(0),
            Family::Exact(p, q) => (x == Slope::frac(p, q)).then_some(0),
            Family::NotIntNot(p, q) => (!x.is_integer() && x != Slope::frac(p, q)).then_some(0),
            Family::NotRecipNot(c) => (!x.eq_int(c) && recip_n(x, c).is_none()).then_some(0),
        };
        if let Some(n) = n {
            out.push((x.p(), x.q(), n));
            if out.len() == count {
                break;
            }
        }
    }
    out
}

/// Checks every row of a parametric table on its probes; returns (checked, failures).
pub fn check_param_table(t: &ParamTable, count: usize) -> (usize, Vec<String>) {
    let alpha = s(t.alpha);
    let mut errs = vec![];
    let mut checked = 0;
    for row in &t.rows {
        let fill = s(row.fill);
        let ps = probes(t, row, count);
        let want = if matches!(row.family, Family::Exact(..)) { 1 } else { count };
        if ps.len() < want {
            errs.push(format!("{} row {} {:?}: {} probes", t.name, row.fill, row.family, ps.len()));
        }
        for (r, q, n) in ps {
            checked += 1;
            let printed = (row.formula)(r, q, n);
            if let Err(e) = agrees(&[alpha, Slope::frac(r, q), fill], &printed) {
                errs.push(format!("{} row {}: {e}", t.name, row.fill));
            }
        }
    }
    (checked, errs)
}
