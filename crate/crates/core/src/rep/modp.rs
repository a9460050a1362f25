//! Linear algebra over a prime field `F_p` with `p < 2^32`.

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > floor`.
pub(crate) fn splitting_prime(e: u64, floor: u64) -> u64 {
    let mut p = (floor / e + 1) * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

/// An element of multiplicative order exactly `e` in `F_p`; requires `e | p - 1`.
pub(crate) fn root_of_unity(e: u64, p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("F_p has a generator");
    pow_mod(g, (p - 1) / e, p)
}

/// Brings `rows` to reduced row echelon form, dropping zero rows; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : a x = 0}` for a square matrix given by rows.
pub(crate) fn kernel(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, p);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(x - a)`, ascending coefficients, via Hessenberg reduction.
pub(crate) fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t_inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            if h[i][m - 1] == 0 {
                continue;
            }
            let u = h[i][m - 1] * t_inv % p;
            for j in 0..n {
                h[i][j] = (h[i][j] + p - u * h[m][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % p;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j-1}) p_{i-1}, 1-indexed.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - h[m][m] * c % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % p;
            let coeff = h[i][m] * prod % p;
            if coeff == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = (next[k] + p - coeff * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// All roots of `poly` in `F_p`, by exhaustive evaluation.
pub(crate) fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        let p = splitting_prime(12, 50);
        assert_eq!(p, 61);
        let w = root_of_unity(12, p);
        assert_eq!(pow_mod(w, 12, p), 1);
        assert!((1..12).all(|k| pow_mod(w, k, p) != 1));
    }

    #[test]
    fn charpoly_matches_small_cases() {
        let p = 101;
        // [[2,1],[1,2]] has char poly x^2 - 4x + 3.
        let a = vec![vec![2, 1], vec![1, 2]];
        assert_eq!(charpoly(&a, p), vec![3, p - 4, 1]);
        assert_eq!(roots(&charpoly(&a, p), p), vec![1, 3]);
        // a permutation matrix of a 3-cycle: x^3 - 1
        let c = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(charpoly(&c, p), vec![p - 1, 0, 0, 1]);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let p = 13;
        let k = kernel(&[vec![1, 2], vec![2, 4]], p);
        assert_eq!(k, vec![vec![11, 1]]);
    }
}
