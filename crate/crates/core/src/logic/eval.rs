use super::{Formula, Interval, TimedWord};

/// `(σ, 1) ⊨ φ` under the strict pointwise semantics. The empty word satisfies nothing.
pub fn evaluate(word: &TimedWord, phi: &Formula) -> bool {
    !word.is_empty() && satisfaction_vector(word, phi)[0]
}

/// Truth value of `φ` at every position of `word`.
pub fn satisfaction_vector(word: &TimedWord, phi: &Formula) -> Vec<bool> {
    let n = word.len();
    let ev = word.events();
    let not = |v: Vec<bool>| v.into_iter().map(|x| !x).collect::<Vec<_>>();
    let zip = |a: Vec<bool>, b: Vec<bool>, f: fn(bool, bool) -> bool| {
        a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect::<Vec<_>>()
    };
    let until = |lhs: &[bool], rhs: &[bool], iv: &Interval| -> Vec<bool> {
        (0..n)
            .map(|i| {
                for j in i + 1..n {
                    if rhs[j] && iv.contains(&(ev[j].time - ev[i].time)) {
                        return true;
                    }
                    if !lhs[j] {
                        return false;
                    }
                }
                false
            })
            .collect()
    };
    let weak = |lhs: &[bool], rhs: &[bool], iv: &Interval| -> Vec<bool> {
        let strict = until(lhs, rhs, iv);
        (0..n)
            .map(|i| (iv.contains_zero() && rhs[i]) || (lhs[i] && strict[i]))
            .collect()
    };
    let sv = |f: &Formula| satisfaction_vector(word, f);
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(a) => ev.iter().map(|e| &e.letter == a).collect(),
        Formula::Not(a) => not(sv(a)),
        Formula::And(a, b) => zip(sv(a), sv(b), |x, y| x && y),
        Formula::Or(a, b) => zip(sv(a), sv(b), |x, y| x || y),
        Formula::Until(a, b, i) => until(&sv(a), &sv(b), i),
        Formula::DualUntil(a, b, i) => not(until(&not(sv(a)), &not(sv(b)), i)),
        Formula::Next(i, a) => until(&vec![false; n], &sv(a), i),
        Formula::Finally(i, a) => until(&vec![true; n], &sv(a), i),
        Formula::Globally(i, a) => not(until(&vec![true; n], &not(sv(a)), i)),
        Formula::WeakUntil(a, b, i) => weak(&sv(a), &sv(b), i),
        Formula::WeakFinally(i, a) => weak(&vec![true; n], &sv(a), i),
        Formula::WeakGlobally(i, a) => not(weak(&vec![true; n], &not(sv(a)), i)),
    }
}
