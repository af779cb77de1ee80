//! Exact real-root counting with Sturm chains.

use num_traits::Zero;

use super::poly::Poly;
use super::rat::{sign, Rat};

/// Sturm chain `p, p', -rem(p, p'), ...` ending at the last nonzero remainder.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let r = -&chain.last().unwrap().div_rem(&next).1;
        chain.push(next);
        next = r;
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn changes_at(chain: &[Poly], x: &Rat) -> usize {
    sign_changes(chain.iter().map(|q| sign(&q.eval(x))))
}

fn changes_at_pos_infinity(chain: &[Poly]) -> usize {
    sign_changes(chain.iter().map(|q| sign(&q.leading())))
}

/// Number of distinct real roots in `[0, ∞)`.
pub fn sturm_nonneg_root_count(p: &Poly) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    let v = p.valuation();
    let at_zero = usize::from(v > 0);
    let q = p.shift_down(v);
    if q.degree() == Some(0) {
        return at_zero;
    }
    let chain = sturm_chain(&q);
    at_zero + changes_at(&chain, &Rat::zero()) - changes_at_pos_infinity(&chain)
}
