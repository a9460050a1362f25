//! Burnside–Dixon splitting of the class algebra over `F_p`, followed by exact
//! reconstruction of the character values.

use super::modp::{charpoly, inv_mod, kernel, pow_mod, roots, root_of_unity, rref, splitting_prime};
use super::{ClassFunction, RepError};
use crate::arith::CyclotomicNumber;
use crate::group::{ConjugacyClass, FiniteGroup};

/// `mats[i][j][l]` = number of `x ∈ C_i` with `x^{-1} z_l ∈ C_j`, for a fixed `z_l ∈ C_l`.
fn class_matrices(group: &FiniteGroup, classes: &[ConjugacyClass], class_map: &[usize]) -> Vec<Vec<Vec<u64>>> {
    let k = classes.len();
    let mut mats = vec![vec![vec![0u64; k]; k]; k];
    for (l, class) in classes.iter().enumerate() {
        let z = class.representative;
        for x in 0..group.order() {
            let y = group.mul(group.inverse(x), z);
            mats[class_map[x]][class_map[y]][l] += 1;
        }
    }
    mats
}

/// Matrix of `a` restricted to the invariant subspace with reduced echelon basis `basis`.
fn restrict(a: &[Vec<u64>], basis: &[Vec<u64>], pivots: &[usize], p: u64) -> Vec<Vec<u64>> {
    let d = basis.len();
    let k = a.len();
    let mut r = vec![vec![0u64; d]; d];
    for (t, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..k).map(|j| (0..k).fold(0, |acc, l| (acc + a[j][l] * b[l]) % p)).collect();
        for (s, &pc) in pivots.iter().enumerate() {
            r[s][t] = image[pc];
        }
    }
    r
}

/// Common eigenvectors of the class matrices.
fn split(mats: &[Vec<Vec<u64>>], k: usize, p: u64) -> Result<Vec<Vec<u64>>, RepError> {
    let mut mixed = vec![vec![0u64; k]; k];
    for (i, m) in mats.iter().enumerate() {
        let c = (i as u64 * 7919 + 13) % p;
        for j in 0..k {
            for l in 0..k {
                mixed[j][l] = (mixed[j][l] + c * m[j][l]) % p;
            }
        }
    }
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect();
    let mut spaces = vec![identity];
    for a in std::iter::once(&mixed).chain(mats.iter()) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let pivots = rref(&mut space, p);
            let r = restrict(a, &space, &pivots, p);
            let d = r.len();
            let mut covered = 0;
            for lambda in roots(&charpoly(&r, p), p) {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|j| if i == j { (r[i][j] + p - lambda) % p } else { r[i][j] }).collect())
                    .collect();
                let eig = kernel(&shifted, p);
                covered += eig.len();
                let lifted: Vec<Vec<u64>> = eig
                    .iter()
                    .map(|c| (0..k).map(|col| (0..d).fold(0, |acc, t| (acc + c[t] * space[t][col]) % p)).collect())
                    .collect();
                next.push(lifted);
            }
            if covered != d {
                return Err(RepError::SplitFailure(format!("eigenspaces cover {covered} of {d} dimensions mod {p}")));
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() != 1) {
        return Err(RepError::SplitFailure(format!("a {}-dimensional common eigenspace remains", s.len())));
    }
    Ok(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

pub(super) fn irreducible_characters(
    group: &FiniteGroup,
    classes: &[ConjugacyClass],
    conductor: u32,
) -> Result<Vec<ClassFunction>, RepError> {
    let order = group.order() as u64;
    let e = group.exponent() as u64;
    let k = classes.len();
    let class_map = group.class_map(classes);
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_map[group.inverse(c.representative)]).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.size() as u64).collect();
    let p = splitting_prime(e, 2 * order);
    let omega = root_of_unity(e, p);

    let mats = class_matrices(group, classes, &class_map);
    let vectors = split(&mats, k, p)?;

    let max_degree = (1..=order).take_while(|d| d * d <= order).last().unwrap_or(1);
    let mut rows = Vec::with_capacity(k);
    for v in vectors {
        if v[0] == 0 {
            return Err(RepError::SplitFailure("eigenvector vanishes at the identity class".into()));
        }
        let s = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * s % p).collect();
        // χ(1)^2 Σ_l ω_l ω_{l'} / h_l = |G|
        let sum = (0..k).fold(0, |acc, l| (acc + w[l] * w[inverse_class[l]] % p * inv_mod(sizes[l] % p, p)) % p);
        if sum == 0 {
            return Err(RepError::SplitFailure("degenerate central character".into()));
        }
        let d_sq = order % p * inv_mod(sum, p) % p;
        let Some(d) = (1..=max_degree).find(|d| d * d % p == d_sq) else {
            return Err(RepError::SplitFailure("no integral degree".into()));
        };
        let values_mod: Vec<u64> = (0..k).map(|l| w[l] * (d % p) % p * inv_mod(sizes[l] % p, p) % p).collect();

        let mut values = Vec::with_capacity(k);
        for class in classes {
            let g = class.representative;
            let o = group.element_order(g) as u64;
            let traces: Vec<u64> = (0..o).map(|j| values_mod[class_map[group.power(g, j as u32)]]).collect();
            let o_inv = inv_mod(o % p, p);
            let step = e / o;
            let mut value = CyclotomicNumber::zero(conductor);
            let mut total = 0u64;
            for j in 0..o {
                let mut acc = 0u64;
                for (t, &tr) in traces.iter().enumerate() {
                    let exp = (e - (step * j * t as u64) % e) % e;
                    acc = (acc + tr * pow_mod(omega, exp, p)) % p;
                }
                let mult = acc * o_inv % p;
                if mult > d {
                    return Err(RepError::SplitFailure(format!("eigenvalue multiplicity {mult} exceeds degree {d}")));
                }
                total += mult;
                if mult > 0 {
                    let z = CyclotomicNumber::zeta_pow((j * (conductor as u64 / o)) as i64, conductor);
                    value = &value + &z.scale(&crate::arith::rat(mult as i64, 1));
                }
            }
            if total != d {
                return Err(RepError::SplitFailure(format!("multiplicities sum to {total}, not {d}")));
            }
            values.push(value);
        }
        rows.push(ClassFunction::new(values));
    }
    Ok(rows)
}
