//! Weight-1 generator alphabets.
//!
//! Two kinds of alphabet are supported: the generator family of the
//! rationalized suspension `ΣX ≃_Q S^{2a+1} ∨ S^{2a+2} ∨ S^{4a+1} ∨ …`
//! (x_i of samelson degree 2ai interleaved with y_j of degree 2aj+1), and a
//! plain finite wedge of spheres `S^{n_1} ∨ … ∨ S^{n_k}` (ρ_j of degree
//! n_j − 1). All degree bookkeeping is in samelson degree; the Whitehead
//! (sphere) degree is the derived field `samelson_degree + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};

static NEXT_ALPHABET_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    X,
    Y,
    Sphere,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::X => "X",
            Family::Y => "Y",
            Family::Sphere => "SPHERE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A weight-1 homotopy generator. Identity is tied to the alphabet that
/// created it; generators from different alphabets never compare.
#[derive(Debug, Clone)]
pub struct Generator {
    alphabet_id: u64,
    pos: u32,
    label: String,
    family: Family,
    index: u32,
    samelson_degree: u32,
}

impl Generator {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn samelson_degree(&self) -> u32 {
        self.samelson_degree
    }

    /// Dimension of the sphere carrying the class: samelson degree + 1.
    pub fn whitehead_degree(&self) -> u32 {
        self.samelson_degree + 1
    }

    pub fn parity(&self) -> Parity {
        if self.samelson_degree % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// "x1" / "y2" / "r3", or the χ/η/ρ glyphs when `unicode` is set.
    pub fn display_label(&self, unicode: bool) -> String {
        if !unicode {
            return self.label.clone();
        }
        let glyph = match self.family {
            Family::X => "χ",
            Family::Y => "η",
            Family::Sphere => "ρ",
        };
        format!("{}{}", glyph, self.index)
    }

    /// Tensor-algebra letter housing this generator's homology class:
    /// u_i for x_i, v_j for y_j, r_j for a raw sphere class.
    pub fn letter_label(&self) -> String {
        match self.family {
            Family::X => format!("u{}", self.index),
            Family::Y => format!("v{}", self.index),
            Family::Sphere => format!("r{}", self.index),
        }
    }

    pub(crate) fn pos(&self) -> u32 {
        self.pos
    }

    pub(crate) fn alphabet_id(&self) -> u64 {
        self.alphabet_id
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Total order on generators of one alphabet (the weight-1 basis order).
pub fn compare(g: &Generator, h: &Generator) -> Result<Ordering> {
    if g.alphabet_id != h.alphabet_id {
        return Err(Error::ForeignGenerator);
    }
    Ok(g.pos.cmp(&h.pos))
}

#[derive(Debug)]
struct Inner {
    id: u64,
    a: Option<u32>,
    /// `Some(c)` when the alphabet is a truncation of an infinite family;
    /// `None` for a complete finite wedge.
    truncation: Option<u32>,
    generators: Vec<Generator>,
}

/// An ordered, immutable generator alphabet. Cheap to clone (shared).
/// Equality is identity: two separately built alphabets are distinct even
/// when their generator lists agree.
#[derive(Debug, Clone)]
pub struct Alphabet {
    inner: Arc<Inner>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    /// Generators of `ΣK(Z,2a) ∨ ⋁_j ΣK(Z,2aj+1)` up to the samelson-degree
    /// cutoff, in the order x1 < y1 < x2 < y2 < …
    pub fn em_wedge(a: u32, max_samelson_degree: u32) -> Result<Alphabet> {
        if a < 1 {
            return Err(Error::InvalidArgument("parameter a must be >= 1".into()));
        }
        if max_samelson_degree < 2 * a {
            return Err(Error::InvalidArgument(format!(
                "cutoff {} admits no generator (x1 has degree {})",
                max_samelson_degree,
                2 * a
            )));
        }
        let id = NEXT_ALPHABET_ID.fetch_add(1, AtomicOrdering::Relaxed);
        let mut generators = Vec::new();
        let mut i = 1u32;
        loop {
            let dx = 2 * a * i;
            if dx > max_samelson_degree {
                break;
            }
            generators.push(Generator {
                alphabet_id: id,
                pos: generators.len() as u32,
                label: format!("x{i}"),
                family: Family::X,
                index: i,
                samelson_degree: dx,
            });
            let dy = dx + 1;
            if dy <= max_samelson_degree {
                generators.push(Generator {
                    alphabet_id: id,
                    pos: generators.len() as u32,
                    label: format!("y{i}"),
                    family: Family::Y,
                    index: i,
                    samelson_degree: dy,
                });
            }
            i += 1;
        }
        Ok(Alphabet {
            inner: Arc::new(Inner {
                id,
                a: Some(a),
                truncation: Some(max_samelson_degree),
                generators,
            }),
        })
    }

    /// Generators ρ_1 < ρ_2 < … of `S^{n_1} ∨ … ∨ S^{n_k}`, in input order.
    pub fn sphere_wedge(whitehead_dims: &[u32]) -> Result<Alphabet> {
        if whitehead_dims.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one sphere dimension is required".into(),
            ));
        }
        if let Some(d) = whitehead_dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidArgument(format!(
                "sphere dimension {d} is not simply connected (need >= 2)"
            )));
        }
        let id = NEXT_ALPHABET_ID.fetch_add(1, AtomicOrdering::Relaxed);
        let generators = whitehead_dims
            .iter()
            .enumerate()
            .map(|(j, &d)| Generator {
                alphabet_id: id,
                pos: j as u32,
                label: format!("r{}", j + 1),
                family: Family::Sphere,
                index: (j + 1) as u32,
                samelson_degree: d - 1,
            })
            .collect();
        Ok(Alphabet {
            inner: Arc::new(Inner {
                id,
                a: None,
                truncation: None,
                generators,
            }),
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.generators
    }

    pub fn len(&self) -> usize {
        self.inner.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.generators.is_empty()
    }

    pub fn a_parameter(&self) -> Option<u32> {
        self.inner.a
    }

    /// Largest samelson degree guaranteed to carry every generator. For a
    /// complete sphere wedge this is just the top generator degree.
    pub fn truncation_degree(&self) -> u32 {
        match self.inner.truncation {
            Some(c) => c,
            None => self
                .inner
                .generators
                .iter()
                .map(|g| g.samelson_degree)
                .max()
                .unwrap_or(0),
        }
    }

    /// Whether generators above `truncation_degree()` were cut away.
    pub fn is_truncated(&self) -> bool {
        self.inner.truncation.is_some()
    }

    pub fn generator_by_label(&self, label: &str) -> Option<&Generator> {
        self.inner.generators.iter().find(|g| g.label == label)
    }

    pub fn same_alphabet(&self, other: &Alphabet) -> bool {
        self.inner.id == other.inner.id
    }

    pub fn contains(&self, g: &Generator) -> bool {
        g.alphabet_id == self.inner.id
    }

    pub(crate) fn id(&self) -> u64 {
        self.inner.id
    }

    pub(crate) fn generator_at(&self, pos: u32) -> &Generator {
        &self.inner.generators[pos as usize]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.inner.a,
            "cutoff": self.truncation_degree(),
            "generators": self.inner.generators.iter().map(|g| serde_json::json!({
                "label": g.label,
                "family": g.family.as_str(),
                "index": g.index,
                "samelson_degree": g.samelson_degree,
            })).collect::<Vec<_>>(),
        })
    }
}
