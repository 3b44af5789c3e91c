//! Conjugacy classes in GL₂(Z) up to inversion.
//!
//! Finite-order and parabolic classes are listed by trace and the content of A ∓ I.
//! A hyperbolic A is recorded through the binary quadratic form c·x² + (d−a)·xy − b·y²
//! whose roots are its fixed points: (trace, det, content, form) determines A, and
//! conjugation acts on the form by (possibly improper) equivalence. The cycle of reduced
//! forms of a class is the period of the continued fraction of a fixed point, so the
//! least reduced form over the allowed equivalences is a complete invariant.

use num_integer::Integer;
use serde::Serialize;

use super::ModelError;
use crate::slope::Unimodular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConjKey {
    /// det 1 and |trace| ≤ 1.
    Elliptic { trace: i64 },
    /// det 1, trace 2·sign, n = content of A − sign·I.
    Parabolic { sign: i64, n: u64 },
    /// det −1 and trace 0; n = content of A − I, which is 1 or 2.
    Reflection { n: u64 },
    Hyperbolic { det: i64, trace: i64, content: u64, form: (i64, i64, i64) },
}

fn content(xs: &[i64]) -> u64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x)) as u64
}

pub fn conj_key(m: &Unimodular) -> ConjKey {
    let (det, tr) = (m.det(), m.trace());
    match (det, tr) {
        (1, -1..=1) => ConjKey::Elliptic { trace: tr },
        (1, 2) | (1, -2) => {
            let s = tr / 2;
            ConjKey::Parabolic { sign: s, n: content(&[m.a - s, m.b, m.c, m.d - s]) }
        }
        (-1, 0) => ConjKey::Reflection { n: content(&[m.a - 1, m.b, m.c, m.d - 1]) },
        _ => hyperbolic_key(m),
    }
}

fn form_of(m: &Unimodular) -> (i64, i64, i64) {
    (m.c, m.d - m.a, -m.b)
}

fn hyperbolic_key(m: &Unimodular) -> ConjKey {
    let det = m.det();
    let j = Unimodular::J;
    let mut cands = vec![*m, j.mul(m).mul(&j)];
    let inv = m.inv();
    cands.push(inv);
    cands.push(j.mul(&inv).mul(&j));
    // With det −1 the inverse has the opposite trace; fix the sign of the trace.
    let trace = if det == -1 { m.trace().abs() } else { m.trace() };
    let g = content(&[m.c, m.d - m.a, m.b]);
    let mut best: Option<(i64, i64, i64)> = None;
    for c in cands.iter().filter(|c| c.trace() == trace) {
        let (a, b, cc) = form_of(c);
        for f in reduced_cycle((a / g as i64, b / g as i64, cc / g as i64)) {
            if best.is_none_or(|x| f < x) {
                best = Some(f);
            }
        }
    }
    ConjKey::Hyperbolic { det, trace, content: g, form: best.expect("some candidate has the chosen trace") }
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn is_reduced(f: (i64, i64, i64), s: i64) -> bool {
    let (a, b, _) = f;
    b > 0 && b <= s && 2 * a.abs() - b <= s && b + 2 * a.abs() > s
}

/// One step of the reduction operator on indefinite forms of non-square discriminant.
fn rho(f: (i64, i64, i64), disc: i64, s: i64) -> (i64, i64, i64) {
    let (_, b, c) = f;
    let m = 2 * c.abs();
    let nb = if c.abs() > s {
        c.abs() - (c.abs() + b).rem_euclid(m)
    } else {
        s - (s + b).rem_euclid(m)
    };
    (c, nb, (nb * nb - disc) / (4 * c))
}

/// All reduced forms properly equivalent to `f`.
fn reduced_cycle(f: (i64, i64, i64)) -> Vec<(i64, i64, i64)> {
    let disc = f.1 * f.1 - 4 * f.0 * f.2;
    let s = isqrt(disc);
    let mut cur = f;
    let mut guard = 0;
    while !is_reduced(cur, s) {
        cur = rho(cur, disc, s);
        guard += 1;
        assert!(guard < 10_000, "reduction did not terminate");
    }
    let start = cur;
    let mut out = vec![start];
    loop {
        cur = rho(cur, disc, s);
        if cur == start {
            break;
        }
        out.push(cur);
    }
    out
}

impl ConjKey {
    pub fn representative(&self) -> Unimodular {
        match *self {
            ConjKey::Elliptic { trace: 1 } => Unimodular::m(1, 1, -1, 0),
            ConjKey::Elliptic { trace: 0 } => Unimodular::m(0, 1, -1, 0),
            ConjKey::Elliptic { .. } => Unimodular::m(-1, 1, -1, 0),
            ConjKey::Parabolic { sign, n } => Unimodular::m(sign, sign * n as i64, 0, sign),
            ConjKey::Reflection { n: 2 } => Unimodular::J,
            ConjKey::Reflection { .. } => Unimodular::m(0, 1, 1, 0),
            ConjKey::Hyperbolic { trace, content, form: (fa, fb, fc), .. } => {
                let g = content as i64;
                let (a, d) = ((trace - g * fb) / 2, (trace + g * fb) / 2);
                Unimodular::m(a, -g * fc, g * fa, d)
            }
        }
    }
}

/// Whether some P ∈ GL₂(Z) has P·A·P⁻¹ ∈ {B, B⁻¹}.
pub fn gl2z_conjugate(a: &Unimodular, b: &Unimodular) -> Result<bool, ModelError> {
    for m in [a, b] {
        if m.det().abs() != 1 {
            return Err(ModelError::Unsupported(format!("{m} is not unimodular")));
        }
    }
    Ok(conj_key(a) == conj_key(b))
}
