use super::format::parse_sts;
use super::Sts;

const EXAMPLE: &str = "\
alphabet C: b; E: a
clocks x
locations q0,q1,q2
initial q0
final q0,q2
q0 -b/reset x-> q0
q0 -a/reset x-> q1
q1 -a[x<=1]-> q1
q1 -b/reset x-> q0
q1 -a[x>1]/reset x-> q2
q2 -a[x>1]/reset x-> q2
q2 -a[x<=1]-> q1
q2 -b/reset x-> q0
";

const TRIVIAL: &str = "\
alphabet C: b; E: a
clocks
initial q
final q
q -a-> q
q -b-> q
";

/// The three-location plant whose accepted words are sequences of blocks, each block
/// a run of `a`s lasting at most one time unit closed by a `b`, or a long `a` gap.
pub fn example_plant() -> Sts {
    parse_sts(EXAMPLE).expect("built-in plant parses")
}

/// One final location accepting every word over `{a, b}`.
pub fn trivial_plant() -> Sts {
    parse_sts(TRIVIAL).expect("built-in plant parses")
}
