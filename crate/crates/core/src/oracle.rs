//! Independent linear-algebra oracles for low-degree cohomology.
//!
//! Everything here works from the structure constants directly and never
//! touches partial composition, so it can cross-check the cohomology tower.

use serde::Serialize;

use crate::endo::AlgebraSpec;
use crate::error::Result;
use crate::exactfield::Scalar;
use crate::exactlinalg::{ExactMatrix, Subspace};

fn c(spec: &AlgebraSpec, i: usize, j: usize, k: usize) -> &Scalar {
    &spec.product[i][j][k]
}

/// The center `{z : e_i z = z e_i for all i}` as a subspace of `A`.
pub fn center(spec: &AlgebraSpec) -> Subspace {
    let d = spec.dim();
    let mut m = ExactMatrix::zeros(d * d, d, spec.field());
    for i in 0..d {
        for k in 0..d {
            for j in 0..d {
                m.set(i * d + k, j, c(spec, i, j, k) - c(spec, j, i, k));
            }
        }
    }
    m.kernel_basis()
}

/// Derivations `D` with `D(xy) = D(x)y + xD(y)`, as vectors of `d × d`
/// matrices flattened row-major (`D[m][k]` is the `m`-th coordinate of `D e_k`).
pub fn derivations(spec: &AlgebraSpec) -> Subspace {
    let d = spec.dim();
    let mut m = ExactMatrix::zeros(d * d * d, d * d, spec.field());
    for i in 0..d {
        for j in 0..d {
            for out in 0..d {
                let row = (i * d + j) * d + out;
                for k in 0..d {
                    // D(e_i e_j)
                    let x = m.get(row, out * d + k) + c(spec, i, j, k);
                    m.set(row, out * d + k, x);
                    // − D(e_i) e_j
                    let x = m.get(row, k * d + i) - c(spec, k, j, out);
                    m.set(row, k * d + i, x);
                    // − e_i D(e_j)
                    let x = m.get(row, k * d + j) - c(spec, i, k, out);
                    m.set(row, k * d + j, x);
                }
            }
        }
    }
    m.kernel_basis()
}

/// Inner derivations `x ↦ ax − xa`, in the layout of [`derivations`].
pub fn inner_derivations(spec: &AlgebraSpec) -> Result<Subspace> {
    let d = spec.dim();
    let ads = (0..d)
        .map(|a| {
            let mut v = vec![spec.field().zero(); d * d];
            for j in 0..d {
                for out in 0..d {
                    v[out * d + j] = c(spec, a, j, out) - c(spec, j, a, out);
                }
            }
            v
        })
        .collect();
    Subspace::spanned_by(spec.field(), d * d, ads)
}

/// `dim Der(A) − dim InnDer(A)`.
pub fn outer_derivation_dim(spec: &AlgebraSpec) -> Result<usize> {
    Ok(derivations(spec).dim() - inner_derivations(spec)?.dim())
}

fn digits(mut flat: usize, d: usize, len: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    for slot in (0..len).rev() {
        v[slot] = flat % d;
        flat /= d;
    }
    v
}

fn undigits(v: &[usize], d: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * d + x)
}

/// The classical Hochschild coboundary `C^n → C^{n+1}`,
///
/// `(βf)(a_0,…,a_n) = a_0 f(a_1,…,a_n) + Σ_{k=1}^{n} (−1)^k f(…,a_{k−1}a_k,…) + (−1)^{n+1} f(a_0,…,a_{n−1}) a_n`,
///
/// in the same coordinates as the cohomology tower: a cochain of degree `n`
/// is indexed by `(out, in_1, …, in_n)` flattened row-major.
pub fn hochschild_matrix(spec: &AlgebraSpec, n: usize) -> ExactMatrix {
    let d = spec.dim();
    let f = spec.field();
    let cols = d.pow(n as u32 + 1);
    let rows = d.pow(n as u32 + 2);
    let mut m = ExactMatrix::zeros(rows, cols, f);
    let block_in = d.pow(n as u32);
    let col = |o: usize, input: &[usize]| o * block_in + undigits(input, d);
    let add = |m: &mut ExactMatrix, r: usize, col: usize, v: Scalar| {
        if !v.is_zero() {
            let x = m.get(r, col) + &v;
            m.set(r, col, x);
        }
    };
    for args_flat in 0..d.pow(n as u32 + 1) {
        let a = digits(args_flat, d, n + 1);
        for out in 0..d {
            let r = out * d.pow(n as u32 + 1) + args_flat;
            // a_0 · f(a_1..a_n): f = E_{o; a_1..a_n}
            for o in 0..d {
                add(&mut m, r, col(o, &a[1..]), c(spec, a[0], o, out).clone());
            }
            // middle terms: f(.., a_{k−1}a_k, ..) = E_{out; .., s, ..}
            for k in 1..=n {
                let sign_neg = k % 2 == 1;
                for s in 0..d {
                    let coef = c(spec, a[k - 1], a[k], s);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut input = Vec::with_capacity(n);
                    input.extend_from_slice(&a[..k - 1]);
                    input.push(s);
                    input.extend_from_slice(&a[k + 1..]);
                    let v = if sign_neg { -coef } else { coef.clone() };
                    add(&mut m, r, col(out, &input), v);
                }
            }
            // (−1)^{n+1} f(a_0..a_{n−1}) · a_n
            for o in 0..d {
                let coef = c(spec, o, a[n], out);
                let v = if n % 2 == 0 { -coef } else { coef.clone() };
                add(&mut m, r, col(o, &a[..n]), v);
            }
        }
    }
    m
}

/// Kernel and image dimensions of the classical complex in degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarRanks {
    pub degree: usize,
    pub dim_ker: usize,
    pub rank: usize,
    pub dim_h: usize,
}

/// Cohomology dimensions of the classical complex in degrees `0..=max_degree`.
pub fn bar_complex_ranks(spec: &AlgebraSpec, max_degree: usize) -> Vec<BarRanks> {
    let mut out = Vec::new();
    let mut prev_rank = 0;
    for n in 0..=max_degree {
        let m = hochschild_matrix(spec, n);
        let rank = m.rank();
        let dim_ker = m.cols() - rank;
        out.push(BarRanks { degree: n, dim_ker, rank, dim_h: dim_ker - prev_rank });
        prev_rank = rank;
    }
    out
}

/// The `ε ∈ {+1, −1}` with `ours = ε · classical`, or `None` if neither holds.
pub fn sign_relation(ours: &ExactMatrix, classical: &ExactMatrix) -> Option<i8> {
    if ours.rows() != classical.rows() || ours.cols() != classical.cols() {
        return None;
    }
    let cells = || (0..ours.rows()).flat_map(|r| (0..ours.cols()).map(move |c| (r, c)));
    if cells().all(|(r, c)| ours.get(r, c) == classical.get(r, c)) {
        Some(1)
    } else if cells().all(|(r, c)| *ours.get(r, c) == -classical.get(r, c)) {
        Some(-1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::load_algebra;

    const DUAL: &str = r#"{"name":"dual","field":{"type":"rational"},"dimension":2,
        "basis":["1","x"],"product":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;
    const QXQ: &str = r#"{"name":"qxq","field":{"type":"rational"},"dimension":2,
        "basis":["e","f"],"product":[[[1,0],[0,0]],[[0,0],[0,1]]]}"#;

    #[test]
    fn dual_numbers() {
        let a = load_algebra(DUAL, None).unwrap();
        assert_eq!(center(&a).dim(), 2);
        // Der = span{x ∂_x}: D(1) = 0, D(x) = x.
        let der = derivations(&a);
        assert_eq!(der.dim(), 1);
        assert_eq!(inner_derivations(&a).unwrap().dim(), 0);
        assert_eq!(outer_derivation_dim(&a).unwrap(), 1);
    }

    #[test]
    fn split_algebra() {
        let a = load_algebra(QXQ, None).unwrap();
        assert_eq!(center(&a).dim(), 2);
        assert_eq!(derivations(&a).dim(), 0);
        let ranks: Vec<_> = bar_complex_ranks(&a, 3).iter().map(|r| r.dim_h).collect();
        assert_eq!(ranks, vec![2, 0, 0, 0]);
    }

    #[test]
    fn classical_complex_squares_to_zero() {
        let a = load_algebra(DUAL, None).unwrap();
        for n in 0..3 {
            let p = hochschild_matrix(&a, n + 1).mul(&hochschild_matrix(&a, n)).unwrap();
            assert!(p.is_zero(), "degree {n}");
        }
    }
}
