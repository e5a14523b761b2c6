//! Exact 2-factor counts from powers of the transfer matrix.
//!
//! A 2-factor of an n-column grid corresponds to a chain of n valid columns
//! in which each column's outlet profile equals the next column's inlet
//! profile. Chains from inlet `v` to outlet `w` are counted by `(M^n)[v, w]`,
//! so the total only depends on how the family ties off the two ends:
//!
//! * boundary families (rectangle, thin cylinder) need both end profiles
//!   empty — the count is the single entry `(M^n)[0^m, 0^m]`;
//! * glued families close the chain through the seam — the count is the
//!   seam-paired diagonal sum `Σ_w (M^n)[σ(w), w]`, with `σ` the family's
//!   profile-level gluing (identity, flip, rotation, or flip∘rotation).
//!
//! Everything is exact `BigUint` arithmetic; no floating point is involved.
//! Two interchangeable evaluation strategies are provided and cross-checked:
//! a dense binary-exponentiation power for small dimensions, and one sparse
//! matrix-vector chain per needed column for large ones.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::alphabet::BinaryWord;
use crate::config::Limits;
use crate::error::Error;
use crate::family::GridSpec;
use crate::transfer::{build_matrix, TransferMatrix};

/// How a count was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Materialize `M^n` by binary exponentiation (dimension-capped).
    DensePower,
    /// One sparse matrix-vector chain per needed column of `M^n`.
    MatVec,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DensePower => "dense-power",
            Method::MatVec => "matvec",
        }
    }
}

/// An exact count plus provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigUint,
    pub method: Method,
    /// False when the dimensions admit no simple graph; the value is then a
    /// pure formula evaluation.
    pub geometric: bool,
}

/// Count the 2-factors of the specified grid, building the matrix on the fly.
pub fn count(spec: &GridSpec, limits: &Limits) -> Result<CountResult, Error> {
    let matrix = build_matrix(spec.m(), spec.kind(), limits.width_cap)?;
    count_with(spec, &matrix, limits)
}

/// Count using an already-built matrix (must match the spec's width and kind).
pub fn count_with(
    spec: &GridSpec,
    matrix: &TransferMatrix,
    limits: &Limits,
) -> Result<CountResult, Error> {
    check_matrix(spec, matrix)?;
    let method = if matrix.dim() <= limits.dense_dim_cap {
        Method::DensePower
    } else {
        Method::MatVec
    };
    let family = spec.family();
    let p = spec.twist();
    let value = match family.seam_map(p, BinaryWord::zeros(spec.m())) {
        None => corner_entry(matrix, spec.n(), method),
        Some(_) => pairing_sum(
            matrix,
            spec.n(),
            &|w| family.seam_map(p, w).expect("family keeps its seam"),
            method,
        ),
    };
    Ok(CountResult {
        value,
        method,
        geometric: spec.is_geometric(),
    })
}

fn check_matrix(spec: &GridSpec, matrix: &TransferMatrix) -> Result<(), Error> {
    if matrix.m() != spec.m() || matrix.kind() != spec.kind() {
        return Err(Error::MatrixMismatch {
            matrix_m: matrix.m(),
            matrix_kind: matrix.kind().as_str(),
            want_m: spec.m(),
            want_kind: spec.kind().as_str(),
        });
    }
    Ok(())
}

/// `Σ_w (M^n)[pairing(w), w]` over all `2^m` profile words.
pub fn pairing_sum(
    matrix: &TransferMatrix,
    n: usize,
    pairing: &(dyn Fn(BinaryWord) -> BinaryWord + Sync),
    method: Method,
) -> BigUint {
    assert!(n >= 1);
    let m = matrix.m();
    let dim = matrix.dim();
    match method {
        Method::DensePower => {
            let power = dense_power(matrix, n);
            let mut total = BigUint::zero();
            for col in 0..dim {
                let row = pairing(BinaryWord::from_index(col, m)).index();
                total += &power[row * dim + col];
            }
            total
        }
        Method::MatVec => {
            // The chains are independent; summing collected results in
            // column order keeps the outcome independent of scheduling.
            let per_column: Vec<BigUint> = (0..dim)
                .into_par_iter()
                .map(|col| {
                    let row = pairing(BinaryWord::from_index(col, m)).index();
                    column_of_power(matrix, n, col).swap_remove(row)
                })
                .collect();
            per_column.into_iter().sum()
        }
    }
}

/// `(M^n)[0^m, 0^m]`, the boundary-family count.
pub fn corner_entry(matrix: &TransferMatrix, n: usize, method: Method) -> BigUint {
    assert!(n >= 1);
    match method {
        Method::DensePower => dense_power(matrix, n)[0].clone(),
        Method::MatVec => column_of_power(matrix, n, 0).swap_remove(0),
    }
}

/// Serialized form: the count travels as a decimal string, never a float.
pub fn count_json(spec: &GridSpec, result: &CountResult) -> String {
    let mut value = json!({
        "spec": spec.to_json_value(),
        "count": result.value.to_string(),
        "method": result.method.as_str(),
    });
    if !result.geometric {
        value["note"] = json!("formula value; no simple grid exists at these dimensions");
    }
    value.to_string()
}

fn dense_of(matrix: &TransferMatrix) -> Vec<BigUint> {
    let dim = matrix.dim();
    let mut a = vec![BigUint::zero(); dim * dim];
    for &(r, c, mult) in matrix.cells() {
        a[r as usize * dim + c as usize] = BigUint::from(mult);
    }
    a
}

fn dense_mul(dim: usize, x: &[BigUint], y: &[BigUint]) -> Vec<BigUint> {
    let mut rows: Vec<Vec<BigUint>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![BigUint::zero(); dim];
            for k in 0..dim {
                let xik = &x[i * dim + k];
                if xik.is_zero() {
                    continue;
                }
                for (cell, yv) in row.iter_mut().zip(&y[k * dim..(k + 1) * dim]) {
                    if !yv.is_zero() {
                        *cell += xik * yv;
                    }
                }
            }
            row
        })
        .collect();
    let mut flat = Vec::with_capacity(dim * dim);
    for row in &mut rows {
        flat.append(row);
    }
    flat
}

fn dense_power(matrix: &TransferMatrix, n: usize) -> Vec<BigUint> {
    let dim = matrix.dim();
    let mut base = dense_of(matrix);
    let mut acc: Option<Vec<BigUint>> = None;
    let mut k = n;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => dense_mul(dim, &a, &base),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = dense_mul(dim, &base, &base);
    }
    acc.expect("n >= 1")
}

/// Column `col` of `M^n`, via n sparse applications to a basis vector.
fn column_of_power(matrix: &TransferMatrix, n: usize, col: usize) -> Vec<BigUint> {
    let mut x = vec![BigUint::zero(); matrix.dim()];
    x[col] = BigUint::one();
    for _ in 0..n {
        x = apply(matrix, &x);
    }
    x
}

fn apply(matrix: &TransferMatrix, x: &[BigUint]) -> Vec<BigUint> {
    let mut y = vec![BigUint::zero(); x.len()];
    for &(r, c, mult) in matrix.cells() {
        let xc = &x[c as usize];
        if xc.is_zero() {
            continue;
        }
        match mult {
            1 => y[r as usize] += xc,
            mult => y[r as usize] += xc * u32::from(mult),
        }
    }
    y
}

/// The same count reduced mod `modulus` — a fast scan aid, explicitly not
/// the exact value. Uses the matrix-vector strategy with `u64` residues.
pub fn count_mod(spec: &GridSpec, matrix: &TransferMatrix, modulus: u64) -> Result<u64, Error> {
    if modulus < 2 {
        return Err(Error::Parse {
            what: "modulus",
            detail: "must be at least 2".to_string(),
        });
    }
    check_matrix(spec, matrix)?;
    let family = spec.family();
    let p = spec.twist();
    let m = spec.m();
    let n = spec.n();
    let dim = matrix.dim();
    let columns: Vec<usize> = match family.seam_map(p, BinaryWord::zeros(m)) {
        None => vec![0],
        Some(_) => (0..dim).collect(),
    };
    let per_column: Vec<u64> = columns
        .par_iter()
        .map(|&col| {
            let row = match family.seam_map(p, BinaryWord::from_index(col, m)) {
                Some(v) => v.index(),
                None => 0,
            };
            let mut x = vec![0u64; dim];
            x[col] = 1 % modulus;
            for _ in 0..n {
                let mut y = vec![0u64; dim];
                for &(r, c, mult) in matrix.cells() {
                    let term = (u128::from(x[c as usize]) * u128::from(mult)) % u128::from(modulus);
                    y[r as usize] =
                        ((u128::from(y[r as usize]) + term) % u128::from(modulus)) as u64;
                }
                x = y;
            }
            x[row]
        })
        .collect();
    Ok(per_column.into_iter().fold(0u64, |a, b| {
        ((u128::from(a) + u128::from(b)) % u128::from(modulus)) as u64
    }))
}
