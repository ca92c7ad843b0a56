use serde::Serialize;

use super::nnf::to_nnf;
use super::{Formula, Interval};
use Formula::*;

/// Syntactic fragments a formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub mitl: bool,
    pub open_mitl: bool,
    pub closed_mitl: bool,
    pub mitl_u0_inf: bool,
    pub mitl_f_inf: bool,
    pub non_strict: bool,
    pub safety_mtl: bool,
    pub coflat_mtl: bool,
}

pub fn classify_fragment(phi: &Formula) -> FragmentReport {
    let nnf = to_nnf(phi);
    FragmentReport {
        mitl: all_intervals(phi, &|i| !i.is_singular()),
        open_mitl: open(&nnf),
        closed_mitl: open(&to_nnf(&Formula::not(phi.clone()))),
        mitl_u0_inf: all_intervals(phi, &|i| i.upper.is_none() || i.lower == 0),
        mitl_f_inf: f_inf(phi),
        non_strict: non_strict(phi),
        safety_mtl: safety(&nnf),
        coflat_mtl: coflat(&nnf),
    }
}

fn all_intervals(phi: &Formula, ok: &dyn Fn(&Interval) -> bool) -> bool {
    phi.interval().map_or(true, ok) && phi.children().iter().all(|c| all_intervals(c, ok))
}

fn open(nnf: &Formula) -> bool {
    let here = match nnf {
        Until(_, _, i) => {
            let right_open = !i.upper_closed;
            (!i.lower_closed && right_open) || (i.lower == 0 && right_open)
        }
        DualUntil(_, _, i) => i.lower_closed && (i.upper_closed || i.upper.is_none()),
        _ => true,
    };
    here && nnf.children().iter().all(|c| open(c))
}

fn f_inf(phi: &Formula) -> bool {
    let here = match phi {
        Finally(i, _) | Globally(i, _) | WeakFinally(i, _) | WeakGlobally(i, _) => i.upper.is_none(),
        Until(..) | DualUntil(..) | WeakUntil(..) | Next(..) => false,
        _ => true,
    };
    here && phi.children().iter().all(|c| f_inf(c))
}

fn non_strict(phi: &Formula) -> bool {
    let here = !matches!(
        phi,
        Until(..) | DualUntil(..) | Next(..) | Finally(..) | Globally(..)
    );
    here && phi.children().iter().all(|c| non_strict(c))
}

fn safety(nnf: &Formula) -> bool {
    let here = !matches!(nnf, Until(_, _, i) if i.upper.is_none());
    here && nnf.children().iter().all(|c| safety(c))
}

fn coflat(nnf: &Formula) -> bool {
    let here = match nnf {
        Until(_, b, i) if i.upper.is_none() => b.is_untimed(),
        DualUntil(a, _, i) if i.upper.is_none() => a.is_untimed(),
        _ => true,
    };
    here && nnf.children().iter().all(|c| coflat(c))
}
