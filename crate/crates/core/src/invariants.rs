//! Invariance of polynomials under a linear group action, and polynomial
//! relations among invariants.
//!
//! A group element acts on functions by `(g·f)(u) = f(g^{-1} u)`, so
//! `h·(g·f) = (hg)·f`.

use std::collections::HashMap;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{CyclotomicNumber, MultiPoly, PolyError};
use crate::expr::{self, EvalError, Expr, ParseError};
use crate::group::{families, FiniteGroup, GroupElement, MatrixElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{vars} variables for a group acting on C^{dim}")]
    DimensionMismatch { vars: usize, dim: usize },
    #[error("polynomial uses `{0}`, which is not a coordinate")]
    UnknownVariable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("binary dihedral invariants need n >= 1")]
    DegenerateDihedral,
}

/// Coordinate names: `u, v` on `C^2`, `x, y, z` on `C^3`, `x, y, z, w` on `C^4`, else `x1, x2, …`.
pub fn default_variables(n: usize) -> Vec<String> {
    match n {
        2 => vec!["u".into(), "v".into()],
        3 => ["x", "y", "z"].map(String::from).to_vec(),
        4 => ["x", "y", "z", "w"].map(String::from).to_vec(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn as_matrix(g: &GroupElement) -> MatrixElement {
    match g {
        GroupElement::Matrix(m) => m.clone(),
        GroupElement::Weight(w) => {
            let exps: Vec<i64> = w.exponents().iter().map(|&a| a as i64).collect();
            MatrixElement::diagonal(&exps, w.order())
        }
    }
}

fn inverse(m: &MatrixElement) -> MatrixElement {
    let mut prev = MatrixElement::identity(m.dim(), m.conductor());
    let mut p = m.clone();
    while !p.is_identity() {
        prev = p.clone();
        p = p.mul(m);
    }
    prev
}

/// The substitution `u_i ↦ (g^{-1} u)_i` realizing the action of one element.
#[derive(Debug, Clone)]
pub struct ActionOnVariables {
    pub element: MatrixElement,
    pub variables: Vec<String>,
    pub images: HashMap<String, MultiPoly>,
}

impl ActionOnVariables {
    pub fn new(element: &GroupElement, variables: &[String], conductor: u32) -> Result<Self, InvariantError> {
        let m = as_matrix(element);
        if variables.len() != m.dim() {
            return Err(InvariantError::DimensionMismatch { vars: variables.len(), dim: m.dim() });
        }
        let c = conductor.lcm(&m.conductor());
        let inv = inverse(&m).embed(c);
        let vars: Vec<MultiPoly> = variables.iter().map(|v| MultiPoly::var(v, c)).collect();
        let images = (0..m.dim())
            .map(|i| {
                let mut image = MultiPoly::zero(c);
                for (j, var) in vars.iter().enumerate() {
                    image = &image + &var.scale(inv.entry(i, j));
                }
                (variables[i].clone(), image)
            })
            .collect();
        Ok(ActionOnVariables { element: m, variables: variables.to_vec(), images })
    }

    pub fn conductor(&self) -> u32 {
        self.images.values().next().map(|p| p.conductor()).unwrap_or(1)
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly, InvariantError> {
        let p = p.trimmed();
        if let Some(v) = p.vars().iter().find(|v| !self.variables.contains(v)) {
            return Err(InvariantError::UnknownVariable(v.clone()));
        }
        let c = p.conductor().lcm(&self.conductor());
        let images: HashMap<String, MultiPoly> = self.images.iter().map(|(k, v)| (k.clone(), v.embed(c))).collect();
        Ok(p.embed(c).substitute(&images)?)
    }
}

/// Whether `p ∘ g^{-1} = p` for every generator `g`.
pub fn is_invariant(p: &MultiPoly, group: &FiniteGroup, variables: &[String]) -> Result<bool, InvariantError> {
    if variables.len() != group.dim() {
        return Err(InvariantError::DimensionMismatch { vars: variables.len(), dim: group.dim() });
    }
    for &g in group.generators() {
        let action = ActionOnVariables::new(group.element(g), variables, p.conductor())?;
        let image = action.apply(p)?;
        if image != p.embed(image.conductor()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `lhs` vanishes identically after substituting the bindings.
pub fn check_relation(lhs: &MultiPoly, bindings: &HashMap<String, MultiPoly>) -> Result<bool, InvariantError> {
    let lhs = lhs.trimmed();
    let c = bindings.values().fold(lhs.conductor(), |acc, b| acc.lcm(&b.conductor()));
    let embedded: HashMap<String, MultiPoly> = bindings.iter().map(|(k, v)| (k.clone(), v.embed(c))).collect();
    Ok(lhs.embed(c).substitute(&embedded)?.is_zero())
}

fn root_conductor(e: &Expr) -> u32 {
    match e {
        Expr::Int(_) | Expr::Var(_) => 1,
        Expr::Root(k) => *k,
        Expr::Neg(a) | Expr::Pow(a, _) => root_conductor(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => root_conductor(a).lcm(&root_conductor(b)),
    }
}

/// Parses a polynomial; coefficients live in the smallest cyclotomic field containing
/// `Q(ζ_conductor)` and every `E(k)` literal.
pub fn parse_polynomial(text: &str, conductor: u32) -> Result<MultiPoly, InvariantError> {
    let e = expr::parse(text)?;
    let c = conductor.max(1).lcm(&root_conductor(&e));
    Ok(expr::eval_multipoly(&e, c)?)
}

/// The invariants `x = u^{2n} + v^{2n}`, `y = u^2 v^2`, `z = uv(u^{2n} - v^{2n})` of the binary dihedral group.
pub fn binary_dihedral_invariants(n: u32) -> Result<[MultiPoly; 3], InvariantError> {
    if n == 0 {
        return Err(InvariantError::DegenerateDihedral);
    }
    let u = MultiPoly::var("u", 1);
    let v = MultiPoly::var("v", 1);
    let (u2n, v2n) = (u.pow(2 * n), v.pow(2 * n));
    let uv = &u * &v;
    Ok([&u2n + &v2n, uv.pow(2), &uv * &(&u2n - &v2n)])
}

/// `z^2 - y x^2 + c·y^{n+1}` in the variables `x, y, z`; the true relation has `c = 4`.
pub fn dihedral_relation(n: u32, c: i64) -> MultiPoly {
    let x = MultiPoly::var("x", 1);
    let y = MultiPoly::var("y", 1);
    let z = MultiPoly::var("z", 1);
    let cy = MultiPoly::constant(CyclotomicNumber::from_int(c, 1));
    &(&z.pow(2) - &(&y * &x.pow(2))) + &(&cy * &y.pow(n + 1))
}

/// Bindings `x, y, z ↦` the binary dihedral invariants.
pub fn dihedral_bindings(n: u32) -> Result<HashMap<String, MultiPoly>, InvariantError> {
    let [x, y, z] = binary_dihedral_invariants(n)?;
    Ok(HashMap::from([("x".to_string(), x), ("y".to_string(), y), ("z".to_string(), z)]))
}

/// Relation and invariance checks for `BD_{4n}`: `(relation holds, x, y, z invariant)`.
pub fn check_binary_dihedral(n: u32) -> Result<(bool, [bool; 3]), InvariantError> {
    if n == 0 {
        return Err(InvariantError::DegenerateDihedral);
    }
    let group = families::binary_dihedral(n).map_err(|_| InvariantError::DegenerateDihedral)?;
    let vars = default_variables(2);
    let inv = binary_dihedral_invariants(n)?;
    let mut flags = [false; 3];
    for (f, p) in flags.iter_mut().zip(&inv) {
        *f = is_invariant(p, &group, &vars)?;
    }
    Ok((check_relation(&dihedral_relation(n, 4), &dihedral_bindings(n)?)?, flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vars() -> Vec<String> {
        default_variables(2)
    }

    #[test]
    fn dihedral_invariants_and_relation() {
        for n in 1..=6 {
            let (rel, inv) = check_binary_dihedral(n).unwrap();
            assert!(rel, "n = {n}");
            assert_eq!(inv, [true; 3], "n = {n}");
            assert!(!check_relation(&dihedral_relation(n, 3), &dihedral_bindings(n).unwrap()).unwrap());
        }
        assert_eq!(binary_dihedral_invariants(0).unwrap_err(), InvariantError::DegenerateDihedral);
    }

    #[test]
    fn uv_is_not_invariant() {
        for n in 1..=4 {
            let g = families::binary_dihedral(n).unwrap();
            let uv = parse_polynomial("u*v", 1).unwrap();
            assert!(!is_invariant(&uv, &g, &vars()).unwrap());
        }
    }

    #[test]
    fn z_is_not_a_polynomial_in_x_and_y() {
        // every term of x and y has even u-degree; every term of z has odd u-degree
        for n in 1..=6 {
            let [x, y, z] = binary_dihedral_invariants(n).unwrap();
            let u_degrees = |p: &MultiPoly| -> Vec<u32> {
                let i = p.vars().iter().position(|v| v == "u").unwrap();
                p.terms().map(|(e, _)| e[i]).collect()
            };
            assert!(u_degrees(&x).iter().chain(&u_degrees(&y)).all(|d| d % 2 == 0));
            assert!(u_degrees(&z).iter().all(|d| d % 2 == 1));
        }
    }

    #[test]
    fn errors() {
        let g = families::binary_dihedral(2).unwrap();
        let p = parse_polynomial("u + w", 1).unwrap();
        assert_eq!(is_invariant(&p, &g, &vars()), Err(InvariantError::UnknownVariable("w".into())));
        assert!(matches!(is_invariant(&p, &g, &default_variables(3)), Err(InvariantError::DimensionMismatch { .. })));
        assert!(matches!(
            check_relation(&parse_polynomial("x + q", 1).unwrap(), &dihedral_bindings(2).unwrap()),
            Err(InvariantError::Poly(PolyError::UnboundVariable(_)))
        ));
    }

    #[test]
    fn abelian_monomials() {
        let g = families::cyclic(7, &[1, 2, 4]).unwrap();
        let v = default_variables(3);
        assert!(is_invariant(&parse_polynomial("x*y*z + x^7 - 3*y^7", 1).unwrap(), &g, &v).unwrap());
        assert!(!is_invariant(&parse_polynomial("x*y", 1).unwrap(), &g, &v).unwrap());
        assert!(is_invariant(&parse_polynomial("E(3)*x^3*y^2", 1).unwrap(), &g, &v).unwrap());
    }

    #[test]
    fn action_composes() {
        let g = families::binary_dihedral(3).unwrap();
        let p = parse_polynomial("u^3 + 2*u*v^2 - E(4)*v", 1).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ga = ActionOnVariables::new(g.element(a), &vars(), 1).unwrap();
                let gb = ActionOnVariables::new(g.element(b), &vars(), 1).unwrap();
                let gba = ActionOnVariables::new(g.element(g.mul(b, a)), &vars(), 1).unwrap();
                assert_eq!(gb.apply(&ga.apply(&p).unwrap()).unwrap(), gba.apply(&p).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn invariants_form_a_ring(n in 1u32..5, i in 0usize..3, j in 0usize..3, k in 1u32..3) {
            let g = families::binary_dihedral(n).unwrap();
            let inv = binary_dihedral_invariants(n).unwrap();
            let prod = &inv[i] * &inv[j].pow(k);
            let sum = &inv[i] + &inv[j];
            prop_assert!(is_invariant(&prod, &g, &vars()).unwrap());
            prop_assert!(is_invariant(&sum, &g, &vars()).unwrap());
        }
    }
}
