//! Endpoint expressions and side conditions for relation schemas.
//!
//! Expressions are affine in integer index variables and closed under the
//! lattice operations `∨` (max) and `∧` (min) of the extended rationals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Endpoint;

/// What values a parameter ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Sort {
    /// left endpoint: `ℚ ∪ {−∞}`
    Lower,
    /// right endpoint: `ℚ ∪ {+∞}`
    Upper,
    /// finite rational
    Rat,
    /// rational in `[0, 1]`
    Unit,
    /// integer index
    Int,
}

impl Sort {
    /// Combines two usages of the same variable.
    pub fn unify(self, other: Sort) -> Sort {
        use Sort::*;
        match (self, other) {
            (a, b) if a == b => a,
            (Int, _) | (_, Int) => Int,
            (Unit, _) | (_, Unit) => Unit,
            _ => Rat,
        }
    }
}

pub type Sorts = BTreeMap<String, Sort>;
pub type Env = BTreeMap<String, Endpoint>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Expr {
    Const(Endpoint),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
}

impl From<Endpoint> for Expr {
    fn from(e: Endpoint) -> Self {
        Expr::Const(e)
    }
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Endpoint::int(n))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn max(a: Expr, b: Expr) -> Expr {
        Expr::Max(Box::new(a), Box::new(b))
    }

    pub fn min(a: Expr, b: Expr) -> Expr {
        Expr::Min(Box::new(a), Box::new(b))
    }

    pub fn as_const(&self) -> Option<Endpoint> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Expr::Add(a, b) | Expr::Max(a, b) | Expr::Min(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn eval(&self, env: &Env) -> Result<Endpoint> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var(v) => env.get(v).copied().ok_or_else(|| Error::Undecidable(format!("unbound variable {v}"))),
            Expr::Add(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                x.checked_add(y).ok_or_else(|| Error::Undecidable(format!("{self} adds opposite infinities")))
            }
            Expr::Max(a, b) => Ok(a.eval(env)?.max(b.eval(env)?)),
            Expr::Min(a, b) => Ok(a.eval(env)?.min(b.eval(env)?)),
        }
    }

    /// Substitutes the bound variables and folds constants.
    pub fn subst(&self, env: &Env) -> Expr {
        match self {
            Expr::Var(v) => env.get(v).map(|c| Expr::Const(*c)).unwrap_or_else(|| self.clone()),
            Expr::Const(_) => self.clone(),
            Expr::Add(a, b) => Expr::add(a.subst(env), b.subst(env)).fold(),
            Expr::Max(a, b) => Expr::max(a.subst(env), b.subst(env)).fold(),
            Expr::Min(a, b) => Expr::min(a.subst(env), b.subst(env)).fold(),
        }
    }

    /// Renames variables (used to take fresh copies of schema parameters).
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Expr {
        match self {
            Expr::Var(v) => Expr::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Expr::Const(_) => self.clone(),
            Expr::Add(a, b) => Expr::add(a.rename(map), b.rename(map)),
            Expr::Max(a, b) => Expr::max(a.rename(map), b.rename(map)),
            Expr::Min(a, b) => Expr::min(a.rename(map), b.rename(map)),
        }
    }

    fn fold(self) -> Expr {
        match &self {
            Expr::Add(a, b) => match (a.as_const(), b.as_const()) {
                (Some(x), Some(y)) => x.checked_add(y).map(Expr::Const).unwrap_or(self),
                (_, Some(y)) if y == Endpoint::zero() => (**a).clone(),
                (Some(x), _) if x == Endpoint::zero() => (**b).clone(),
                _ => self,
            },
            Expr::Max(a, b) | Expr::Min(a, b) => {
                let is_max = matches!(self, Expr::Max(..));
                match (a.as_const(), b.as_const()) {
                    (Some(x), Some(y)) => Expr::Const(if is_max { x.max(y) } else { x.min(y) }),
                    _ if a == b => (**a).clone(),
                    // identity elements
                    (Some(Endpoint::NegInf), _) if is_max => (**b).clone(),
                    (_, Some(Endpoint::NegInf)) if is_max => (**a).clone(),
                    (Some(Endpoint::PosInf), _) if !is_max => (**b).clone(),
                    (_, Some(Endpoint::PosInf)) if !is_max => (**a).clone(),
                    // absorbing elements
                    (Some(Endpoint::PosInf), _) | (_, Some(Endpoint::PosInf)) if is_max => Expr::Const(Endpoint::PosInf),
                    (Some(Endpoint::NegInf), _) | (_, Some(Endpoint::NegInf)) if !is_max => Expr::Const(Endpoint::NegInf),
                    _ => self,
                }
            }
            _ => self,
        }
    }

    /// Constant folding plus bound reasoning from parameter sorts: a `Unit`
    /// variable lies in `[0, 1]`, so e.g. `p ∨ 0 = p` and `q ∧ 0 = 0`.
    pub fn simplify(&self, sorts: &Sorts) -> Expr {
        let e = match self {
            Expr::Const(_) | Expr::Var(_) => return self.clone(),
            Expr::Add(a, b) => Expr::add(a.simplify(sorts), b.simplify(sorts)),
            Expr::Max(a, b) => Expr::max(a.simplify(sorts), b.simplify(sorts)),
            Expr::Min(a, b) => Expr::min(a.simplify(sorts), b.simplify(sorts)),
        }
        .fold();
        if let Expr::Add(a, b) = &e {
            // an infinite endpoint absorbs a finite offset
            for (x, y) in [(a, b), (b, a)] {
                if matches!(x.as_const(), Some(Endpoint::NegInf | Endpoint::PosInf)) && finite_valued(y, sorts) {
                    return (**x).clone();
                }
            }
        }
        let (lo, hi) = match &e {
            Expr::Max(a, b) | Expr::Min(a, b) => (a, b),
            _ => return e,
        };
        let is_max = matches!(e, Expr::Max(..));
        let (var, c) = match (lo.as_const(), hi.as_const()) {
            (None, Some(c)) => (&**lo, c),
            (Some(c), None) => (&**hi, c),
            _ => return e,
        };
        let Some((vmin, vmax)) = bounds(var, sorts) else { return e };
        if is_max {
            if c <= vmin {
                return var.clone();
            }
            if c >= vmax {
                return Expr::Const(c);
            }
        } else {
            if c >= vmax {
                return var.clone();
            }
            if c <= vmin {
                return Expr::Const(c);
            }
        }
        e
    }
}

fn finite_valued(e: &Expr, sorts: &Sorts) -> bool {
    match e {
        Expr::Const(c) => c.is_finite(),
        Expr::Var(v) => matches!(sorts.get(v), Some(Sort::Int | Sort::Rat | Sort::Unit)),
        Expr::Add(a, b) | Expr::Max(a, b) | Expr::Min(a, b) => finite_valued(a, sorts) && finite_valued(b, sorts),
    }
}

fn bounds(e: &Expr, sorts: &Sorts) -> Option<(Endpoint, Endpoint)> {
    match e {
        Expr::Const(c) => Some((*c, *c)),
        Expr::Var(v) => match sorts.get(v)? {
            Sort::Unit => Some((Endpoint::zero(), Endpoint::int(1))),
            Sort::Lower => Some((Endpoint::NegInf, Endpoint::PosInf)),
            Sort::Upper => Some((Endpoint::NegInf, Endpoint::PosInf)),
            _ => None,
        },
        Expr::Max(a, b) => {
            let (a0, a1) = bounds(a, sorts)?;
            let (b0, b1) = bounds(b, sorts)?;
            Some((a0.max(b0), a1.max(b1)))
        }
        Expr::Min(a, b) => {
            let (a0, a1) = bounds(a, sorts)?;
            let (b0, b1) = bounds(b, sorts)?;
            Some((a0.min(b0), a1.min(b1)))
        }
        Expr::Add(..) => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CmpOp {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl CmpOp {
    pub fn test(self, a: Endpoint, b: Endpoint) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            CmpOp::Le => "≤",
            CmpOp::Ne => "≠",
            CmpOp::Ge => "≥",
            other => other.ascii(),
        }
    }
}

/// A decidable side condition over exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Cond {
    True,
    False,
    Cmp(Expr, CmpOp, Expr),
    And(Vec<Cond>),
    Or(Vec<Cond>),
}

impl Cond {
    pub fn cmp(a: Expr, op: CmpOp, b: Expr) -> Cond {
        Cond::Cmp(a, op, b)
    }

    pub fn and(parts: Vec<Cond>) -> Cond {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Cond::True => {}
                Cond::False => return Cond::False,
                Cond::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Cond::True,
            1 => flat.pop().expect("one"),
            _ => Cond::And(flat),
        }
    }

    pub fn or(parts: Vec<Cond>) -> Cond {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Cond::False => {}
                Cond::True => return Cond::True,
                Cond::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Cond::False,
            1 => flat.pop().expect("one"),
            _ => Cond::Or(flat),
        }
    }

    pub fn eval(&self, env: &Env) -> Result<bool> {
        match self {
            Cond::True => Ok(true),
            Cond::False => Ok(false),
            Cond::Cmp(a, op, b) => Ok(op.test(a.eval(env)?, b.eval(env)?)),
            Cond::And(cs) => {
                for c in cs {
                    if !c.eval(env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Cond::Or(cs) => {
                for c in cs {
                    if c.eval(env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Partial substitution; comparisons that become constant are decided.
    pub fn subst(&self, env: &Env) -> Cond {
        match self {
            Cond::True | Cond::False => self.clone(),
            Cond::Cmp(a, op, b) => {
                let (a, b) = (a.subst(env), b.subst(env));
                match (a.as_const(), b.as_const()) {
                    (Some(x), Some(y)) => {
                        if op.test(x, y) {
                            Cond::True
                        } else {
                            Cond::False
                        }
                    }
                    _ => Cond::Cmp(a, *op, b),
                }
            }
            Cond::And(cs) => Cond::and(cs.iter().map(|c| c.subst(env)).collect()),
            Cond::Or(cs) => Cond::or(cs.iter().map(|c| c.subst(env)).collect()),
        }
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Cond {
        match self {
            Cond::True | Cond::False => self.clone(),
            Cond::Cmp(a, op, b) => Cond::Cmp(a.rename(map), *op, b.rename(map)),
            Cond::And(cs) => Cond::And(cs.iter().map(|c| c.rename(map)).collect()),
            Cond::Or(cs) => Cond::Or(cs.iter().map(|c| c.rename(map)).collect()),
        }
    }

    pub fn simplify(&self, sorts: &Sorts) -> Cond {
        match self {
            Cond::True | Cond::False => self.clone(),
            Cond::Cmp(a, op, b) => {
                let (a, b) = (a.simplify(sorts), b.simplify(sorts));
                match (a.as_const(), b.as_const()) {
                    (Some(x), Some(y)) => {
                        if op.test(x, y) {
                            Cond::True
                        } else {
                            Cond::False
                        }
                    }
                    _ => Cond::Cmp(a, *op, b),
                }
            }
            Cond::And(cs) => Cond::and(cs.iter().map(|c| c.simplify(sorts)).collect()),
            Cond::Or(cs) => Cond::or(cs.iter().map(|c| c.simplify(sorts)).collect()),
        }
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Cond::True | Cond::False => {}
            Cond::Cmp(a, _, b) => {
                a.vars(out);
                b.vars(out);
            }
            Cond::And(cs) | Cond::Or(cs) => cs.iter().for_each(|c| c.vars(out)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, Endpoint)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn eval_affine_max() {
        // p ∨ (p' + n) at p = 0, p' = 1/2, n = -1
        let e = Expr::max(Expr::var("p"), Expr::add(Expr::var("p'"), Expr::var("n")));
        let v = e.eval(&env(&[("p", Endpoint::zero()), ("p'", Endpoint::ratio(1, 2)), ("n", Endpoint::int(-1))]));
        assert_eq!(v.unwrap(), Endpoint::zero());
    }

    #[test]
    fn infinity_absorbs_offsets() {
        let e = Expr::add(Expr::Const(Endpoint::NegInf), Expr::var("n"));
        assert_eq!(e.eval(&env(&[("n", Endpoint::int(5))])).unwrap(), Endpoint::NegInf);
    }

    #[test]
    fn unit_sort_simplification() {
        let sorts: Sorts = [("p".to_string(), Sort::Unit), ("q".to_string(), Sort::Unit)].into_iter().collect();
        assert_eq!(Expr::max(Expr::var("p"), Expr::int(0)).simplify(&sorts), Expr::var("p"));
        assert_eq!(Expr::max(Expr::var("p"), Expr::int(1)).simplify(&sorts), Expr::int(1));
        assert_eq!(Expr::min(Expr::var("q"), Expr::int(1)).simplify(&sorts), Expr::var("q"));
        assert_eq!(Expr::min(Expr::var("q"), Expr::int(0)).simplify(&sorts), Expr::int(0));
        // no bound information for plain rationals
        let rsorts: Sorts = [("p".to_string(), Sort::Rat)].into_iter().collect();
        let e = Expr::max(Expr::var("p"), Expr::int(0));
        assert_eq!(e.simplify(&rsorts), e);
    }

    #[test]
    fn infinite_identities_fold() {
        let e = Expr::max(Expr::var("p"), Expr::Const(Endpoint::NegInf));
        assert_eq!(e.simplify(&Sorts::new()), Expr::var("p"));
        let e = Expr::min(Expr::var("q"), Expr::Const(Endpoint::PosInf));
        assert_eq!(e.simplify(&Sorts::new()), Expr::var("q"));
    }

    #[test]
    fn conditions() {
        let c = Cond::and(vec![Cond::cmp(Expr::var("p"), CmpOp::Le, Expr::var("q")), Cond::cmp(Expr::var("q"), CmpOp::Lt, Expr::int(1))]);
        assert!(c.eval(&env(&[("p", Endpoint::zero()), ("q", Endpoint::ratio(1, 2))])).unwrap());
        assert!(!c.eval(&env(&[("p", Endpoint::zero()), ("q", Endpoint::int(1))])).unwrap());
        assert_eq!(c.subst(&env(&[("q", Endpoint::int(1))])), Cond::False);
        assert!(c.eval(&env(&[("p", Endpoint::zero())])).is_err());
    }
}
