//! Sparse multivariate polynomials with cyclotomic coefficients.
//!
//! Rational polynomials are the conductor-1 case. Variable lists are kept
//! sorted, so two polynomials over the same variables compare structurally.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::CyclotomicNumber;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
    #[error("conductor mismatch: {0} vs {1}")]
    Conductor(u32, u32),
}

#[derive(Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    conductor: u32,
    terms: BTreeMap<Vec<u32>, CyclotomicNumber>,
}

impl MultiPoly {
    pub fn zero(conductor: u32) -> Self {
        MultiPoly { vars: Vec::new(), conductor, terms: BTreeMap::new() }
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        let conductor = c.conductor();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), conductor, terms }
    }

    pub fn from_int(c: i64, conductor: u32) -> Self {
        MultiPoly::constant(CyclotomicNumber::from_int(c, conductor))
    }

    pub fn var(name: &str, conductor: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], CyclotomicNumber::one(conductor));
        MultiPoly { vars: vec![name.to_string()], conductor, terms }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &CyclotomicNumber)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in one variable (0 if absent).
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Variables actually occurring with a positive exponent.
    pub fn support_vars(&self) -> BTreeSet<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Lifts every coefficient into `Q(ζ_target)`.
    pub fn embed(&self, target: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            conductor: target,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.embed(target))).collect(),
        }
    }

    /// Re-expresses over a sorted superset of the current variables.
    fn with_vars(&self, vars: &[String]) -> MultiPoly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    ne[map[i]] = k;
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly { vars: vars.to_vec(), conductor: self.conductor, terms }
    }

    fn unify(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        assert_eq!(a.conductor, b.conductor, "polynomial conductor mismatch");
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars: Vec<String> =
            a.vars.iter().chain(&b.vars).cloned().collect::<BTreeSet<_>>().into_iter().collect();
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        MultiPoly { vars: self.vars.clone(), conductor: self.conductor, terms }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::from_int(1, self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Composition: every variable of `self` is replaced by its binding.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Result<MultiPoly, PolyError> {
        let mut images = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let b = bindings.get(v).ok_or_else(|| PolyError::UnboundVariable(v.clone()))?;
            if b.conductor != self.conductor {
                return Err(PolyError::Conductor(self.conductor, b.conductor));
            }
            images.push(b);
        }
        let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(self.conductor);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = power_cache.entry((i, k)).or_insert_with(|| images[i].pow(k)).clone();
                term = &term * &p;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Drops variables that no longer occur.
    pub fn trimmed(&self) -> MultiPoly {
        let keep: Vec<usize> =
            (0..self.vars.len()).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        MultiPoly { vars, conductor: self.conductor, terms }
    }

    fn from_terms(vars: Vec<String>, conductor: u32, terms: BTreeMap<Vec<u32>, CyclotomicNumber>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars, conductor, terms }
    }
}

impl PartialEq for MultiPoly {
    /// Equality as polynomials: unused variables do not matter.
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && (self - other).is_zero()
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (e, c) in terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{k}", self.vars[i]) })
                .collect();
            let (neg, cstr) = match c.to_rational() {
                Some(q) => {
                    use num_traits::Signed;
                    (q.is_negative(), q.abs().to_string())
                }
                None => (false, format!("({})", cyclo_literal(c))),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if mono.is_empty() {
                f.write_str(&cstr)?;
            } else if cstr == "1" {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{cstr}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Formats a cyclotomic number with `E(m)` standing for `ζ_m`, the literal syntax of the expression grammar.
pub fn cyclo_literal(c: &CyclotomicNumber) -> String {
    let sym = format!("E({})", c.conductor());
    c.format_with(&sym)
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::unify(self, rhs);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            match terms.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    terms.insert(e, c);
                }
            }
        }
        MultiPoly::from_terms(a.vars, a.conductor, terms)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::unify(self, rhs);
        let mut terms: BTreeMap<Vec<u32>, CyclotomicNumber> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match terms.get_mut(&e) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        terms.insert(e, c);
                    }
                }
            }
        }
        MultiPoly::from_terms(a.vars, a.conductor, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: &str) -> MultiPoly {
        MultiPoly::var(v, 1)
    }

    #[test]
    fn square_of_binomial() {
        let p = var("x").pow(2);
        let mut b = HashMap::new();
        b.insert("x".to_string(), &var("u") + &var("v"));
        let q = p.substitute(&b).unwrap();
        let expected = &(&var("u").pow(2) + &(&MultiPoly::from_int(2, 1) * &(&var("u") * &var("v")))) + &var("v").pow(2);
        assert_eq!(q, expected);
        assert_eq!(q.to_string(), "u^2 + 2*u*v + v^2");
    }

    #[test]
    fn unbound_variable() {
        let p = &var("x") + &var("y");
        let mut b = HashMap::new();
        b.insert("x".to_string(), var("u"));
        assert_eq!(p.substitute(&b), Err(PolyError::UnboundVariable("y".into())));
    }

    #[test]
    fn cancellation_leaves_zero() {
        let p = &(&var("x") * &var("y")) - &(&var("y") * &var("x"));
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn cyclotomic_coefficients() {
        let i = CyclotomicNumber::zeta_pow(1, 4);
        let p = MultiPoly::var("u", 4).scale(&i);
        let sq = p.pow(2);
        assert_eq!(sq, MultiPoly::var("u", 4).pow(2).scale(&CyclotomicNumber::from_int(-1, 4)));
        assert_eq!(p.to_string(), "(E(4))*u");
    }
}
