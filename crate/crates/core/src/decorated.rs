//! Non-crossing partitions decorated by words, and the splitting map from
//! words to decorated partitions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{catalan, check_shape, shape_splits, Atom, AtomSplit, BarWord, Element, Linear, SplitCache, Tensor2};
use crate::partition::{nc_partitions_cached, NonCrossingPartition};
use crate::word::{Alphabet, Word};

/// `L ⊗ (a_1⋯a_n)` with `L` a non-crossing partition of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedNC {
    shape: NonCrossingPartition,
    decoration: Word,
}

impl DecoratedNC {
    pub fn new(shape: NonCrossingPartition, decoration: Word) -> Result<Self> {
        check_shape(&shape)?;
        if shape.size() != decoration.len() {
            return Err(Error::CarrierMismatch(format!(
                "shape on {} points decorated by a word of length {}",
                shape.size(),
                decoration.len()
            )));
        }
        Ok(DecoratedNC { shape, decoration })
    }

    pub fn shape(&self) -> &NonCrossingPartition {
        &self.shape
    }

    pub fn decoration(&self) -> &Word {
        &self.decoration
    }

    /// The decoration restricted to each block, in block order.
    pub fn block_words(&self) -> Vec<Word> {
        self.shape
            .blocks()
            .iter()
            .map(|b| {
                self.decoration.restrict(&b.iter().map(|x| x - 1).collect::<Vec<_>>()).expect("blocks are non-empty")
            })
            .collect()
    }
}

static DECORATED_SPLITS: SplitCache<DecoratedNC> = SplitCache::new();

impl Atom for DecoratedNC {
    fn degree(&self) -> usize {
        self.decoration.len()
    }

    fn splits(&self) -> Arc<[AtomSplit<Self>]> {
        DECORATED_SPLITS.get(self, || {
            let piece = |(p, pos): &(NonCrossingPartition, Vec<usize>)| DecoratedNC {
                shape: p.clone(),
                decoration: self.decoration.restrict(pos).expect("non-empty piece"),
            };
            shape_splits(&self.shape)
                .iter()
                .map(|s| AtomSplit {
                    left: s.left.as_ref().map(piece),
                    right: s.right.iter().map(piece).collect(),
                    first_left: s.first_left,
                })
                .collect()
        })
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{}:{}", self.shape, alphabet.render_word(&self.decoration))
    }

    /// `{1,4}{2,3}:a1.a2.a3.a4`
    fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        let (shape, word) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("expected `shape:word`, got `{s}`")))?;
        DecoratedNC::new(shape.trim().parse()?, alphabet.parse_word(word)?)
    }

    fn basis(alphabet: &Alphabet, degree: usize) -> Result<Vec<Self>> {
        let shapes = nc_partitions_cached(degree)?;
        let words = alphabet.words(degree);
        let mut out = Vec::with_capacity(shapes.len() * words.len());
        for s in shapes.iter() {
            for w in &words {
                out.push(DecoratedNC { shape: s.clone(), decoration: w.clone() });
            }
        }
        Ok(out)
    }

    fn basis_len(alphabet: &Alphabet, degree: usize) -> usize {
        catalan(degree).saturating_mul(alphabet.len().saturating_pow(degree as u32))
    }
}

/// `Sp(w_1|…|w_m) = Sp(w_1)⋯Sp(w_m)` with `Sp(w) = Σ_{L∈NC_n} L⊗w`.
pub fn sp(b: &BarWord<Word>) -> Result<Element<DecoratedNC>> {
    let mut acc: Element<DecoratedNC> = Element::unit();
    for w in b.parts() {
        let shapes = nc_partitions_cached(w.len())?;
        let factor: Element<DecoratedNC> = shapes
            .iter()
            .map(|s| (BarWord::atom(DecoratedNC { shape: s.clone(), decoration: w.clone() }), 1.into()))
            .collect();
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

pub fn sp_element(x: &Element<Word>) -> Result<Element<DecoratedNC>> {
    let mut out = Linear::zero();
    for (b, c) in x {
        out.add_assign_scaled(&sp(b)?, c);
    }
    Ok(out)
}

/// `(Sp ⊗ Sp)(t)`, both legs extended bar-wise.
pub fn sp_tensor(t: &Tensor2<Word>) -> Result<Tensor2<DecoratedNC>> {
    let mut out = Linear::zero();
    for ((l, r), c) in t {
        let (sl, sr) = (sp(l)?, sp(r)?);
        for (x, cx) in &sl {
            for (y, cy) in &sr {
                out.add_term((x.clone(), y.clone()), &(c * cx) * cy);
            }
        }
    }
    Ok(out)
}
