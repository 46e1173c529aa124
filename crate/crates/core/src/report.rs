//! Census, automorphism bookkeeping, and the cross-oracle verifier.

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::basis::{enumerate_basic_products, BasicProduct, Class};
use crate::error::{Error, Result};
use crate::hilton::{hilton_rank_table_from_products, pbw_dimension_oracle, r_sequence, RankTable};
use crate::tensor::{expand, graded_square, span_rank, NCPoly};

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One census row: the weight-1 generator (if any) and the decomposable
/// basic products of that dimension, split pure/hybrid.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    #[serde(rename = "dim")]
    pub whitehead_dim: u32,
    pub indecomposable: Option<String>,
    pub pure: Vec<String>,
    pub hybrid: Vec<String>,
}

/// Census of π_*(ΣX) ⊗ Q generators for dimensions 2a+1 ..= max, squares
/// excluded. Entries appear in the basis order.
pub fn census(a: u32, max_whitehead_dim: u32, unicode: bool) -> Result<Vec<CensusRow>> {
    if max_whitehead_dim < 2 * a + 1 {
        return Err(Error::InvalidArgument(format!(
            "census needs max dimension >= {}",
            2 * a + 1
        )));
    }
    let alphabet = Alphabet::em_wedge(a, max_whitehead_dim - 1)?;
    let products = enumerate_basic_products(&alphabet, max_whitehead_dim)?;
    let mut rows: Vec<CensusRow> = (2 * a + 1..=max_whitehead_dim)
        .map(|dim| CensusRow {
            whitehead_dim: dim,
            indecomposable: None,
            pure: Vec::new(),
            hybrid: Vec::new(),
        })
        .collect();
    for p in &products {
        let dim = p.height();
        if dim < 2 * a + 1 {
            continue;
        }
        let row = &mut rows[(dim - 2 * a - 1) as usize];
        match p.classify()? {
            Class::Leaf => {
                debug_assert!(row.indecomposable.is_none());
                row.indecomposable = Some(p.render_whitehead(unicode));
            }
            Class::PureX | Class::PureY => row.pure.push(p.render_whitehead(unicode)),
            Class::Hybrid => row.hybrid.push(p.render_whitehead(unicode)),
        }
    }
    Ok(rows)
}

pub fn census_to_json(rows: &[CensusRow]) -> serde_json::Value {
    serde_json::to_value(rows).expect("census rows serialize")
}

pub fn census_to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("dim,indecomposable,pure,hybrid\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.whitehead_dim,
            csv_field(r.indecomposable.as_deref().unwrap_or("")),
            csv_field(&r.pure.join("; ")),
            csv_field(&r.hybrid.join("; ")),
        ));
    }
    out
}

pub fn census_to_text(rows: &[CensusRow]) -> String {
    let dash = "-".to_string();
    let mut out = String::new();
    out.push_str("dim | indecomposable | pure decomposables | hybrid decomposables\n");
    for r in rows {
        let pure = if r.pure.is_empty() {
            dash.clone()
        } else {
            r.pure.join(", ")
        };
        let hybrid = if r.hybrid.is_empty() {
            dash.clone()
        } else {
            r.hybrid.join(", ")
        };
        out.push_str(&format!(
            "{:<3} | {:<14} | {} | {}\n",
            r.whitehead_dim,
            r.indecomposable.as_deref().unwrap_or("-"),
            pure,
            hybrid
        ));
    }
    out
}

/// Rank bookkeeping for the extension
/// 0 → Hom(I_r, D_r) → Aut(qL_{≤r}) → Aut(qL_{≤r'}) ⊕ Aut(I_r) → 0
/// at one dimension of the r-schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutLedgerRow {
    pub m: u32,
    pub r_m: u32,
    pub i_rank: u64,
    pub d_rank: u64,
    pub hom_rank: u64,
    pub aut_i_order: u8,
}

/// (I, D, hom = I·D, |Aut(I)|) at an arbitrary dimension of a rank table.
pub fn aut_entries(table: &RankTable, whitehead_dim: u32) -> Result<(u64, u64, u64, u8)> {
    let (i, d) = table.split_indecomposable_decomposable(whitehead_dim)?;
    debug_assert!(i <= 1);
    Ok((i, d, i * d, if i == 1 { 2 } else { 1 }))
}

/// One row per m ≤ max_m, at the dimensions r_m of the schedule.
pub fn aut_ledger(a: u32, max_m: u32, include_squares: bool) -> Result<Vec<AutLedgerRow>> {
    if max_m < 1 {
        return Err(Error::InvalidArgument("need max_m >= 1".into()));
    }
    let top = r_sequence(a, max_m);
    let alphabet = Alphabet::em_wedge(a, top.max(2 * a + 1) - 1)?;
    let products = enumerate_basic_products(&alphabet, top)?;
    let table = hilton_rank_table_from_products(&alphabet, top, include_squares, &products)?;
    (1..=max_m)
        .map(|m| {
            let r_m = r_sequence(a, m);
            let (i_rank, d_rank, hom_rank, aut_i_order) = aut_entries(&table, r_m)?;
            Ok(AutLedgerRow {
                m,
                r_m,
                i_rank,
                d_rank,
                hom_rank,
                aut_i_order,
            })
        })
        .collect()
}

pub fn aut_ledger_to_csv(rows: &[AutLedgerRow]) -> String {
    let mut out = String::from("m,r_m,i_rank,d_rank,hom_rank,aut_i_order\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.m, r.r_m, r.i_rank, r.d_rank, r.hom_rank, r.aut_i_order
        ));
    }
    out
}

pub fn aut_ledger_to_text(rows: &[AutLedgerRow]) -> String {
    let mut out = String::from("m    r_m  I  D    hom(IxD)  |Aut(I)|\n");
    for r in rows {
        out.push_str(&format!(
            "{:<4} {:<4} {:<2} {:<4} {:<9} {}\n",
            r.m, r.r_m, r.i_rank, r.d_rank, r.hom_rank, r.aut_i_order
        ));
    }
    out
}

/// One dimension of the cross-oracle check: Hilton enumeration count,
/// tensor-algebra span rank, and the Hilbert-series value must agree.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub dim: u32,
    pub enumeration: u64,
    pub span_rank: u64,
    pub series: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&VerifyRow> {
        self.rows.iter().find(|r| !r.pass)
    }

    pub fn ensure_pass(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(r) => Err(Error::VerificationFailure {
                dim: r.dim,
                enumeration: r.enumeration,
                span_rank: r.span_rank,
                series: r.series,
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("dim  enumeration  span_rank  series  status\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:<4} {:<12} {:<10} {:<7} {}\n",
                r.dim,
                r.enumeration,
                r.span_rank,
                r.series,
                if r.pass { "ok" } else { "MISMATCH" }
            ));
        }
        out.push_str(&if self.pass {
            format!("PASS ({} dimensions checked)\n", self.rows.len())
        } else {
            let first = self.first_failure().expect("failing row");
            format!(
                "FAIL (first disagreement at dimension {}: enumeration {}, span rank {}, series {})\n",
                first.dim, first.enumeration, first.span_rank, first.series
            )
        });
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verification report serializes")
    }
}

/// Per-dimension expansions, for `verify --dump`.
pub fn expansions_for_dim(products: &[BasicProduct], dim: u32) -> Vec<(String, NCPoly)> {
    let mut out = Vec::new();
    for p in products {
        if p.height() == dim {
            out.push((p.render_whitehead(false), expand(p)));
        }
        if p.height() % 2 == 0 && 2 * p.height() - 1 == dim {
            let label = format!("[{0}, {0}]", p.render_whitehead(false));
            out.push((label, graded_square(p)));
        }
    }
    out
}

/// Full cross-oracle run for the EM wedge with parameter `a`.
pub fn verify(a: u32, max_whitehead_dim: u32) -> Result<VerificationReport> {
    let alphabet = Alphabet::em_wedge(a, max_whitehead_dim.max(2 * a + 1) - 1)?;
    verify_alphabet(&alphabet, max_whitehead_dim)
}

/// Cross-oracle run over any alphabet.
pub fn verify_alphabet(alphabet: &Alphabet, max_whitehead_dim: u32) -> Result<VerificationReport> {
    let products = enumerate_basic_products(alphabet, max_whitehead_dim)?;
    verify_with_products(alphabet, max_whitehead_dim, &products)
}

/// The verifier proper, over a caller-supplied basis list. Supplying a
/// corrupted list makes the oracles disagree — the negative-path tests use
/// exactly this seam.
pub fn verify_with_products(
    alphabet: &Alphabet,
    max_whitehead_dim: u32,
    products: &[BasicProduct],
) -> Result<VerificationReport> {
    if max_whitehead_dim < 2 {
        return Err(Error::InvalidArgument(
            "verification starts at dimension 2".into(),
        ));
    }
    let table = hilton_rank_table_from_products(alphabet, max_whitehead_dim, true, products)?;
    let series = pbw_dimension_oracle(alphabet, max_whitehead_dim - 1)?;
    let mut rows = Vec::new();
    for dim in 2..=max_whitehead_dim {
        let enumeration = table.record(dim)?.total_rank;
        let polys: Vec<NCPoly> = expansions_for_dim(products, dim)
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        let rank = span_rank(&polys)?;
        let series_value = *series.get(&(dim - 1)).unwrap_or(&0);
        rows.push(VerifyRow {
            dim,
            enumeration,
            span_rank: rank,
            series: series_value,
            pass: enumeration == rank && rank == series_value,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerificationReport { rows, pass })
}
