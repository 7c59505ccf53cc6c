//! Seeded random test ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(1..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(e)
}

/// Minimalization of `{x_i^{d_i}} + {count random monomials of degree <= max_deg}`
/// with `1 <= d_i <= max_deg`. The pure powers make the ideal quasi-stable.
pub fn random_quasi_stable(seed: u64, n: usize, max_deg: u32, count: usize) -> MonomialIdeal {
    assert!(n >= 1 && max_deg >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Monomial> = (1..=n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i - 1] = rng.gen_range(1..=max_deg);
            Monomial::new(e)
        })
        .collect();
    for _ in 0..count {
        gens.push(random_monomial(&mut rng, n, max_deg));
    }
    let ideal = MonomialIdeal::new(gens).expect("nonempty, no units");
    assert!(ideal.is_quasi_stable(), "pure powers force quasi-stability");
    ideal
}

/// Closure of `count` (at least one) random monomials under the exchange
/// `g -> g * x_i / x_cls(g)` for `i > cls(g)`.
pub fn random_stable(seed: u64, n: usize, max_deg: u32, count: usize) -> MonomialIdeal {
    assert!(n >= 1 && max_deg >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<Monomial> = (0..count.max(1))
        .map(|_| random_monomial(&mut rng, n, max_deg))
        .collect();
    let mut ideal = MonomialIdeal::new(gens).expect("nonempty, no units");
    loop {
        let mut added = Vec::new();
        for g in ideal.gens() {
            let c = g.cls().expect("nonunit");
            let base = g.div_var(c).expect("x_cls divides g");
            for i in c + 1..=n {
                let m = base.mul_var(i);
                if !ideal.contains(&m) {
                    added.push(m);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        added.extend(ideal.gens().iter().cloned());
        ideal = MonomialIdeal::new(added).expect("nonempty");
    }
    assert!(ideal.is_stable());
    ideal
}
