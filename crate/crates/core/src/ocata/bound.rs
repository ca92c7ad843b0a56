use crate::logic::{to_nnf, Formula};

/// Default per-location interval bound: one more than the largest constant of any
/// clock-reading until location, and at least 1. `configured` overrides it.
pub fn merge_bound(phi: &Formula, configured: Option<usize>) -> usize {
    if let Some(m) = configured {
        return m.max(1);
    }
    fn walk(f: &Formula, best: &mut usize) {
        if let Formula::Until(_, _, i) | Formula::DualUntil(_, _, i) = f {
            if !i.is_full() {
                *best = (*best).max(i.max_constant() as usize + 1);
            }
        }
        for c in f.children() {
            walk(c, best);
        }
    }
    let mut best = 1;
    walk(&to_nnf(phi), &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    #[test]
    fn defaults_and_override() {
        let phi = parse_formula("wG (a -> wF[0,1] b)").unwrap();
        assert_eq!(merge_bound(&phi, None), 2);
        assert_eq!(merge_bound(&Formula::atom("a"), None), 1);
        assert_eq!(merge_bound(&phi, Some(5)), 5);
    }
}
