//! Rational homotopy rank tables via Hilton's decomposition.
//!
//! Each basic product of height h contributes the rational homotopy of the
//! sphere S^h: one class in dimension h, plus — for even h — the Whitehead
//! square's class in dimension 2h−1. The independent cross-check solves for
//! the free graded Lie algebra dimensions L_n in
//!
//!   Π_{n even} (1−t^n)^{−L_n} · Π_{n odd} (1+t^n)^{L_n}  =  1 / (1 − f(t))
//!
//! where f is the generating polynomial of the alphabet degrees and the
//! right side is the Hilbert series of the tensor algebra.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::basis::{enumerate_basic_products, BasicProduct};
use crate::error::{Error, Result};

/// Rank of π_m(S^n) ⊗ Q: 1 at m = n, and additionally 1 at m = 2n−1 when n
/// is even.
pub fn sphere_rational_ranks(sphere_dim: u32, m: u32) -> u64 {
    debug_assert!(sphere_dim >= 2);
    let even = sphere_dim % 2 == 0;
    u64::from(m == sphere_dim || (even && m == 2 * sphere_dim - 1))
}

/// Per-dimension rank split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    #[serde(rename = "dim")]
    pub whitehead_dim: u32,
    #[serde(rename = "indecomposable")]
    pub indecomposable_rank: u64,
    #[serde(rename = "basic_decomposable")]
    pub basic_decomposable_rank: u64,
    #[serde(rename = "whitehead_square")]
    pub whitehead_square_rank: u64,
    #[serde(rename = "total")]
    pub total_rank: u64,
}

/// Ranks of π_m(Y) ⊗ Q for contiguous dimensions 2..=max.
#[derive(Debug, Clone)]
pub struct RankTable {
    alphabet: Alphabet,
    include_squares: bool,
    records: Vec<RankRecord>,
}

impl RankTable {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn include_squares(&self) -> bool {
        self.include_squares
    }

    pub fn records(&self) -> &[RankRecord] {
        &self.records
    }

    pub fn max_dim(&self) -> u32 {
        self.records.last().map_or(1, |r| r.whitehead_dim)
    }

    pub fn record(&self, whitehead_dim: u32) -> Result<&RankRecord> {
        let min = 2;
        let max = self.max_dim();
        if whitehead_dim < min || whitehead_dim > max {
            return Err(Error::OutOfRange {
                dim: whitehead_dim,
                min,
                max,
            });
        }
        Ok(&self.records[(whitehead_dim - min) as usize])
    }

    /// (I, D): weight-1 rank versus everything bracket-generated (basic
    /// decomposables plus square contributions when included).
    pub fn split_indecomposable_decomposable(&self, whitehead_dim: u32) -> Result<(u64, u64)> {
        let r = self.record(whitehead_dim)?;
        Ok((
            r.indecomposable_rank,
            r.basic_decomposable_rank + r.whitehead_square_rank,
        ))
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("dim,indecomposable,basic_decomposable,whitehead_square,total\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.whitehead_dim,
                r.indecomposable_rank,
                r.basic_decomposable_rank,
                r.whitehead_square_rank,
                r.total_rank
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.records).expect("rank records serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("dim  indecomposable  decomposable  square  total\n");
        for r in &self.records {
            out.push_str(&format!(
                "{:<4} {:<15} {:<13} {:<7} {}\n",
                r.whitehead_dim,
                r.indecomposable_rank,
                r.basic_decomposable_rank,
                r.whitehead_square_rank,
                r.total_rank
            ));
        }
        out
    }
}

/// Builds the rank table by summing sphere contributions over the basic
/// products of height <= max_whitehead_dim.
pub fn hilton_rank_table(
    alphabet: &Alphabet,
    max_whitehead_dim: u32,
    include_squares: bool,
) -> Result<RankTable> {
    let products = enumerate_basic_products(alphabet, max_whitehead_dim)?;
    hilton_rank_table_from_products(alphabet, max_whitehead_dim, include_squares, &products)
}

/// Same, over a caller-supplied basis list (the verification seam).
pub fn hilton_rank_table_from_products(
    alphabet: &Alphabet,
    max_whitehead_dim: u32,
    include_squares: bool,
    products: &[BasicProduct],
) -> Result<RankTable> {
    if max_whitehead_dim < 2 {
        return Err(Error::InvalidArgument(
            "rank tables start at dimension 2".into(),
        ));
    }
    let mut records: Vec<RankRecord> = (2..=max_whitehead_dim)
        .map(|dim| RankRecord {
            whitehead_dim: dim,
            indecomposable_rank: 0,
            basic_decomposable_rank: 0,
            whitehead_square_rank: 0,
            total_rank: 0,
        })
        .collect();
    let mut bump = |dim: u32, f: &dyn Fn(&mut RankRecord)| {
        if (2..=max_whitehead_dim).contains(&dim) {
            f(&mut records[(dim - 2) as usize]);
        }
    };
    for p in products {
        let h = p.height();
        if p.weight() == 1 {
            bump(h, &|r| r.indecomposable_rank += 1);
        } else {
            bump(h, &|r| r.basic_decomposable_rank += 1);
        }
        if include_squares && h % 2 == 0 {
            bump(2 * h - 1, &|r| r.whitehead_square_rank += 1);
        }
    }
    for r in &mut records {
        r.total_rank = r.indecomposable_rank + r.basic_decomposable_rank + r.whitehead_square_rank;
        if alphabet.a_parameter().is_some() {
            debug_assert!(r.indecomposable_rank <= 1);
        }
    }
    Ok(RankTable {
        alphabet: alphabet.clone(),
        include_squares,
        records,
    })
}

/// The dimension schedule r_m = 2an+1 (m = 2n−1) or 2an+2 (m = 2n).
pub fn r_sequence(a: u32, m: u32) -> u32 {
    debug_assert!(a >= 1 && m >= 1);
    let n = m.div_ceil(2);
    if m % 2 == 1 {
        2 * a * n + 1
    } else {
        2 * a * n + 2
    }
}

fn series_mul_inplace(target: &mut [BigInt], factor: &[(usize, BigInt)]) {
    // factor is sparse: list of (exponent, coefficient), exponent 0 first
    let n = target.len();
    for i in (0..n).rev() {
        let mut acc = BigInt::zero();
        for (e, c) in factor {
            if *e > i {
                break;
            }
            if !c.is_zero() && !target[i - e].is_zero() {
                acc += c * &target[i - e];
            }
        }
        target[i] = acc;
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Dimensions L_n of the free graded Lie algebra on the alphabet, solved
/// degree by degree from the tensor-algebra Hilbert series.
pub fn pbw_dimension_oracle(
    alphabet: &Alphabet,
    max_samelson_degree: u32,
) -> Result<BTreeMap<u32, u64>> {
    let n = max_samelson_degree as usize;
    let mut f = vec![0u32; n + 1];
    for g in alphabet.generators() {
        let d = g.samelson_degree() as usize;
        if d <= n {
            f[d] += 1;
        }
    }
    // A = 1/(1−f): A_k = Σ_j f_j A_{k−j}
    let mut a = vec![BigInt::zero(); n + 1];
    a[0] = BigInt::one();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            if f[j] > 0 {
                acc += BigInt::from(f[j]) * &a[k - j];
            }
        }
        a[k] = acc;
    }
    // strip factors: before handling degree d, q = A / Π_{m<d} factor_m,
    // so q = 1 + L_d t^d + O(t^{d+1})
    let mut q = a;
    let mut dims = BTreeMap::new();
    for d in 1..=n {
        let coeff = q[d].clone();
        if coeff.is_negative() {
            return Err(Error::InconsistentSeries {
                degree: d as u32,
                value: coeff.to_string(),
            });
        }
        let l = coeff.to_u64().ok_or(Error::InconsistentSeries {
            degree: d as u32,
            value: coeff.to_string(),
        })?;
        dims.insert(d as u32, l);
        if l > 0 {
            let factor: Vec<(usize, BigInt)> = if d % 2 == 0 {
                // divide by (1−t^d)^{−L}: multiply by (1−t^d)^{L}
                (0..=n / d)
                    .map(|k| {
                        let c = binomial(l, k as u64);
                        (d * k, if k % 2 == 1 { -c } else { c })
                    })
                    .collect()
            } else {
                // divide by (1+t^d)^{L}: multiply by (1+t^d)^{−L}
                (0..=n / d)
                    .map(|k| {
                        let c = binomial(l + k as u64 - 1, k as u64);
                        (d * k, if k % 2 == 1 { -c } else { c })
                    })
                    .collect()
            };
            series_mul_inplace(&mut q, &factor);
        }
    }
    Ok(dims)
}
