use magic_core::classify::classify;
use magic_core::exceptional::{cosmetic_pairs, exceptional_slopes, universal_slopes, ExceptionalError};
use magic_core::slope::{FillingSpec, Slope};

fn ball(h: i64) -> Vec<Slope> {
    let mut out = vec![Slope::INF];
    for q in 1..=h {
        for p in -h..=h {
            if let Ok(s) = Slope::new(p, q) {
                if s.q() == q && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn hyperbolic(xs: &[Slope]) -> bool {
    classify(&FillingSpec::new(xs.to_vec()).unwrap()).is_hyperbolic()
}

/// E(base) is exactly the set of non-hyperbolic fillings inside the ball.
#[test]
fn exceptional_sets_are_sound_on_a_farey_ball() {
    let wide = ball(12);
    let bases: Vec<Vec<Slope>> = {
        let small = ball(3);
        let mut v: Vec<Vec<Slope>> = small.iter().map(|s| vec![*s]).collect();
        for (i, a) in small.iter().enumerate() {
            for b in &small[i..] {
                v.push(vec![*a, *b]);
            }
        }
        v.into_iter().filter(|b| hyperbolic(b)).collect()
    };
    assert!(bases.len() > 50);
    for base in &bases {
        let e = exceptional_slopes(base).unwrap();
        assert!(e.count >= 5, "{base:?}");
        for u in universal_slopes() {
            assert!(e.slopes.contains(&u));
        }
        for s in &wide {
            let mut all = base.clone();
            all.push(*s);
            assert_eq!(!hyperbolic(&all), e.slopes.contains(s), "{base:?} + {s}");
        }
        for s in &e.slopes {
            let mut all = base.clone();
            all.push(*s);
            assert!(!hyperbolic(&all), "{base:?} + {s}");
        }
    }
}

#[test]
fn bad_bases() {
    assert!(matches!(exceptional_slopes(&[Slope::int(-3)]), Err(ExceptionalError::NonHyperbolic(..))));
    let three = [Slope::int(1), Slope::int(2), Slope::int(7)];
    assert!(matches!(exceptional_slopes(&three), Err(ExceptionalError::Arity { .. })));
    assert!(matches!(cosmetic_pairs(&[Slope::int(1), Slope::int(2)]), Err(ExceptionalError::Arity { .. })));
}

#[test]
fn pairs_on_n_are_all_tabled() {
    let pairs = cosmetic_pairs(&[]).unwrap();
    assert!(pairs.iter().all(|p| p.tabled));
}
