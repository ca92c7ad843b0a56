use num_rational::Ratio;

/// Exact non-negative rational used for timestamps, clock values and guard
/// constants.
pub type Q = Ratio<i64>;

/// Parses `n`, `n/d` or a finite decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Option<Q> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Q::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let frac: i64 = frac.parse().ok()?;
        return Some(Q::new(int.checked_mul(scale)?.checked_add(frac)?, scale));
    }
    text.parse::<i64>().ok().map(Q::from_integer)
}

/// Canonical `n` or `n/d` rendering.
pub(crate) fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3"), Some(Q::from_integer(3)));
        assert_eq!(parse_rational("3/6"), Some(Q::new(1, 2)));
        assert_eq!(parse_rational("0.05"), Some(Q::new(1, 20)));
        assert_eq!(parse_rational(".5"), Some(Q::new(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_q(&Q::new(4, 2)), "2");
        assert_eq!(fmt_q(&Q::new(3, 4)), "3/4");
    }
}
