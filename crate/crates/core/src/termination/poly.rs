//! Linear interpretations over the naturals and their interval relaxation.

use std::collections::BTreeMap;

use crate::term::{Term, Var};

/// `c0 + c1*x1 + ... + ck*xk` per symbol name.
pub type Interpretation = BTreeMap<String, Vec<u64>>;

/// A linear form whose coefficients are only known to lie in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub constant: (u64, u64),
    pub vars: BTreeMap<Var, (u64, u64)>,
}

fn add(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    (a.0.saturating_add(b.0), a.1.saturating_add(b.1))
}

fn mul(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    (a.0.saturating_mul(b.0), a.1.saturating_mul(b.1))
}

/// Coefficient intervals for each symbol: exact once assigned, `[0, max]` before.
pub struct Partial<'a> {
    pub index: &'a BTreeMap<String, usize>,
    pub assigned: &'a [Option<Vec<u64>>],
    pub max: u64,
}

impl Partial<'_> {
    fn coeff(&self, name: &str, k: usize) -> (u64, u64) {
        match self
            .index
            .get(name)
            .and_then(|&i| self.assigned[i].as_ref())
        {
            Some(cs) => (cs[k], cs[k]),
            None => (0, self.max),
        }
    }

    pub fn eval(&self, t: &Term) -> Bounds {
        match t {
            Term::Var(v) => Bounds {
                constant: (0, 0),
                vars: BTreeMap::from([(v.clone(), (1, 1))]),
            },
            Term::App(f, args) => {
                let mut out = Bounds {
                    constant: self.coeff(f.name(), 0),
                    vars: BTreeMap::new(),
                };
                for (k, a) in args.iter().enumerate() {
                    let c = self.coeff(f.name(), k + 1);
                    let b = self.eval(a);
                    out.constant = add(out.constant, mul(c, b.constant));
                    for (v, iv) in b.vars {
                        let e = out.vars.entry(v).or_insert((0, 0));
                        *e = add(*e, mul(c, iv));
                    }
                }
                out
            }
        }
    }
}

/// `Some(false)` if `l >= r` fails for every completion of the bounds,
/// `Some(true)` if it holds for every completion, `None` if undecided.
pub fn weak(l: &Bounds, r: &Bounds) -> Option<bool> {
    let mut all = l.constant.0 >= r.constant.1;
    if l.constant.1 < r.constant.0 {
        return Some(false);
    }
    for (v, rv) in &r.vars {
        let lv = l.vars.get(v).copied().unwrap_or((0, 0));
        if lv.1 < rv.0 {
            return Some(false);
        }
        all &= lv.0 >= rv.1;
    }
    if all {
        Some(true)
    } else {
        None
    }
}

/// Like [`weak`] for `l > r`: coefficients dominate and the constant is larger.
pub fn strict(l: &Bounds, r: &Bounds) -> Option<bool> {
    match weak(l, r) {
        Some(false) => Some(false),
        w => {
            if l.constant.1 <= r.constant.0 {
                Some(false)
            } else if w == Some(true) && l.constant.0 > r.constant.1 {
                Some(true)
            } else {
                None
            }
        }
    }
}
