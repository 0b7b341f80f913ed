//! Set partitions and non-crossing partitions of finite sets of positive
//! integers, in canonical form.
//!
//! Canonical form: every block sorted ascending, blocks ordered by their
//! minimum. The carrier is the union of the blocks. The empty partition (no
//! blocks, empty carrier) is allowed and stands for the empty part of a split.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps on enumeration sizes. Exceeding them is an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_set: usize,
    pub max_nc: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_set: 12, max_nc: 14 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, canonicalising them.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks = blocks;
        let mut seen = std::collections::BTreeSet::new();
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 {
                    return Err(Error::InvalidPartition("elements must be positive integers".into()));
                }
                if !seen.insert(x) {
                    return Err(Error::InvalidPartition(format!("element {x} occurs twice")));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { blocks })
    }

    /// Trusted constructor; `blocks` must already be canonical.
    pub(crate) fn from_canonical(blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
        SetPartition { blocks }
    }

    pub fn empty() -> Self {
        SetPartition { blocks: Vec::new() }
    }

    /// `0̂` of the carrier: all singletons.
    pub fn finest(carrier: &[usize]) -> Result<Self> {
        SetPartition::new(carrier.iter().map(|&x| vec![x]).collect())
    }

    /// `1̂` of the carrier: a single block.
    pub fn coarsest(carrier: &[usize]) -> Result<Self> {
        if carrier.is_empty() {
            return Ok(SetPartition::empty());
        }
        SetPartition::new(vec![carrier.to_vec()])
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Number of elements of the carrier.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn carrier(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        c.sort_unstable();
        c
    }

    /// True when the carrier is `[n]` for `n = size()`.
    pub fn is_standard(&self) -> bool {
        self.carrier().iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Block index of every element, for carriers `[n]`.
    fn block_of(&self) -> Vec<usize> {
        let max = self.blocks.iter().flatten().copied().max().unwrap_or(0);
        let mut owner = vec![usize::MAX; max + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = i;
            }
        }
        owner
    }

    /// True iff no `p1 < q1 < p2 < q2` with `p1 ~ p2`, `q1 ~ q2` in different blocks.
    pub fn is_noncrossing(&self) -> bool {
        // Two blocks cross iff one has elements both inside and outside the
        // open hull of the other while the other does the same.
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                if crosses(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// `self ≤ other` in the refinement order.
    pub fn refines(&self, other: &SetPartition) -> Result<bool> {
        if self.carrier() != other.carrier() {
            return Err(Error::CarrierMismatch(format!("{self} vs {other}")));
        }
        let owner = other.block_of();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| owner[x] == owner[b[0]])))
    }

    /// Intersects every block with `subset`, dropping empty intersections.
    pub fn restrict(&self, subset: &[usize]) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|x| subset.binary_search(x).is_ok()).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition::from_canonical(blocks)
    }

    /// Relabels the carrier onto `[n]` by the increasing bijection.
    pub fn standardize(&self) -> SetPartition {
        let carrier = self.carrier();
        let blocks =
            self.blocks.iter().map(|b| b.iter().map(|x| carrier.binary_search(x).unwrap() + 1).collect()).collect();
        SetPartition::from_canonical(blocks)
    }

    /// Canonical text encoding, e.g. `{1,4}{2,3}`; the empty partition is `{}`.
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

fn crosses(a: &[usize], b: &[usize]) -> bool {
    // a and b sorted; look for a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2
    let interleave = |x: &[usize], y: &[usize]| {
        for &p1 in x {
            for &q1 in y.iter().filter(|&&q| q > p1) {
                for &p2 in x.iter().filter(|&&p| p > q1) {
                    if y.iter().any(|&q2| q2 > p2) {
                        return true;
                    }
                }
            }
        }
        false
    };
    interleave(a, b) || interleave(b, a)
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("{}");
        }
        for b in &self.blocks {
            f.write_str("{")?;
            for (k, x) in b.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer `{}`", t.trim()))))
        .collect()
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Accepts `{1,4}{2,3}`, optionally followed by `on {1,2,3,4}`. A JSON
    /// object `{"blocks": [[1,4],[2,3]]}` is accepted as well.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("{\"") || s.starts_with("{ \"") {
            let p: SetPartition = serde_json::from_str(s).map_err(|e| Error::Parse(format!("partition JSON: {e}")))?;
            return SetPartition::new(p.blocks);
        }
        let (body, carrier) = match s.find(" on ") {
            Some(k) => (&s[..k], Some(s[k + 4..].trim())),
            None => (s, None),
        };
        let body = body.trim();
        let mut blocks = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            if !rest.starts_with('{') {
                return Err(Error::Parse(format!("expected `{{` in `{s}`")));
            }
            let close = rest.find('}').ok_or_else(|| Error::Parse(format!("unclosed block in `{s}`")))?;
            let block = parse_int_list(&rest[1..close])?;
            if !block.is_empty() {
                blocks.push(block);
            } else if body != "{}" {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            rest = rest[close + 1..].trim_start();
        }
        let p = SetPartition::new(blocks)?;
        if let Some(c) = carrier {
            let c = c
                .strip_prefix('{')
                .and_then(|c| c.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("bad carrier `{c}`")))?;
            let mut c = parse_int_list(c)?;
            c.sort_unstable();
            if c != p.carrier() {
                return Err(Error::CarrierMismatch(format!("blocks of `{body}` do not cover the stated carrier")));
            }
        }
        Ok(p)
    }
}

/// A set partition known to satisfy the non-crossing condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossingPartition(SetPartition);

impl NonCrossingPartition {
    pub fn new(p: SetPartition) -> Result<Self> {
        if !p.is_noncrossing() {
            return Err(Error::InvalidPartition(format!("{p} is crossing")));
        }
        Ok(NonCrossingPartition(p))
    }

    pub fn empty() -> Self {
        NonCrossingPartition(SetPartition::empty())
    }

    /// The one-block partition `1̂_n` of `[n]`.
    pub fn one_block(n: usize) -> Self {
        NonCrossingPartition(SetPartition::coarsest(&(1..=n).collect::<Vec<_>>()).unwrap())
    }

    /// The all-singletons partition `0̂_n` of `[n]`.
    pub fn singletons(n: usize) -> Self {
        NonCrossingPartition(SetPartition::finest(&(1..=n).collect::<Vec<_>>()).unwrap())
    }

    pub fn as_set_partition(&self) -> &SetPartition {
        &self.0
    }

    pub fn into_set_partition(self) -> SetPartition {
        self.0
    }

    pub fn restrict(&self, subset: &[usize]) -> NonCrossingPartition {
        NonCrossingPartition(self.0.restrict(subset))
    }

    pub fn standardize(&self) -> NonCrossingPartition {
        NonCrossingPartition(self.0.standardize())
    }

    /// Relation between blocks `i` and `j` (0-based).
    pub fn block_relation(&self, i: usize, j: usize) -> Result<BlockRelation> {
        let k = self.block_count();
        if i >= k || j >= k {
            return Err(Error::BlockIndex(format!("({i}, {j}) with {k} blocks")));
        }
        if i == j {
            return Err(Error::BlockIndex(format!("indices must differ, got {i} twice")));
        }
        Ok(relation(&self.blocks()[i], &self.blocks()[j]))
    }

    /// `nested[i][j]` is true iff block `i <_L` block `j`.
    pub fn nesting_matrix(&self) -> Vec<Vec<bool>> {
        let b = self.blocks();
        (0..b.len()).map(|i| (0..b.len()).map(|j| i != j && is_nested_in(&b[i], &b[j])).collect()).collect()
    }

    /// All splits `Q ⊔ T` of the blocks where no `Q` block nests inside a `T` block.
    pub fn admissible_splits(&self) -> Vec<AdmissibleSplit> {
        let k = self.block_count();
        assert!(k < usize::BITS as usize, "too many blocks");
        let nested = self.nesting_matrix();
        let carrier = self.carrier();
        let mut out = Vec::new();
        for mask in 0usize..(1 << k) {
            let in_q = |i: usize| mask >> i & 1 == 1;
            let ok = (0..k).all(|q| !in_q(q) || (0..k).all(|t| in_q(t) || !nested[q][t]));
            if !ok {
                continue;
            }
            let q_blocks: Vec<Vec<usize>> = (0..k).filter(|&i| in_q(i)).map(|i| self.blocks()[i].clone()).collect();
            let t_blocks: Vec<Vec<usize>> = (0..k).filter(|&i| !in_q(i)).map(|i| self.blocks()[i].clone()).collect();
            let q_part = NonCrossingPartition(SetPartition::from_canonical(q_blocks));
            let t_part = SetPartition::from_canonical(t_blocks);
            let q_carrier = q_part.carrier();
            let components = connected_components(&q_carrier, &carrier)
                .expect("Q carrier lies inside the carrier")
                .into_iter()
                .map(|comp| NonCrossingPartition(t_part.restrict(&comp)))
                .collect();
            out.push(AdmissibleSplit { q_part, components });
        }
        out
    }
}

impl std::ops::Deref for NonCrossingPartition {
    type Target = SetPartition;
    fn deref(&self) -> &SetPartition {
        &self.0
    }
}

impl fmt::Display for NonCrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for NonCrossingPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NonCrossingPartition::new(s.parse()?)
    }
}

/// How two distinct blocks of a non-crossing partition sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockRelation {
    /// Every element of the first block is below every element of the second.
    DisjointBefore,
    DisjointAfter,
    /// The first block lies strictly between min and max of the second (`<_L`).
    NestedInside,
    NestedOutside,
}

impl BlockRelation {
    pub fn inverse(self) -> BlockRelation {
        match self {
            BlockRelation::DisjointBefore => BlockRelation::DisjointAfter,
            BlockRelation::DisjointAfter => BlockRelation::DisjointBefore,
            BlockRelation::NestedInside => BlockRelation::NestedOutside,
            BlockRelation::NestedOutside => BlockRelation::NestedInside,
        }
    }
}

fn is_nested_in(inner: &[usize], outer: &[usize]) -> bool {
    let (lo, hi) = (outer[0], *outer.last().unwrap());
    inner.iter().all(|&m| lo < m && m < hi)
}

fn relation(a: &[usize], b: &[usize]) -> BlockRelation {
    if a.last() < b.first() {
        BlockRelation::DisjointBefore
    } else if b.last() < a.first() {
        BlockRelation::DisjointAfter
    } else if is_nested_in(a, b) {
        BlockRelation::NestedInside
    } else {
        debug_assert!(is_nested_in(b, a), "blocks of a non-crossing partition");
        BlockRelation::NestedOutside
    }
}

/// An admissible split `L = Q ⊔ T`, with the complement already cut into the
/// partitions it induces on the connected components of `carrier − carrier(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSplit {
    pub q_part: NonCrossingPartition,
    pub components: Vec<NonCrossingPartition>,
}

impl AdmissibleSplit {
    pub fn complement_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.components.iter().flat_map(|c| c.blocks().iter())
    }
}

/// Connected components of `universe − subset` relative to `universe`: maximal
/// runs of non-`subset` elements not separated by an element of `subset`.
/// Both inputs must be sorted.
pub fn connected_components(subset: &[usize], universe: &[usize]) -> Result<Vec<Vec<usize>>> {
    if let Some(x) = subset.iter().find(|x| universe.binary_search(x).is_err()) {
        return Err(Error::CarrierMismatch(format!("{x} is not in the universe")));
    }
    let mut out = Vec::new();
    let mut run = Vec::new();
    for &u in universe {
        if subset.binary_search(&u).is_ok() {
            if !run.is_empty() {
                out.push(std::mem::take(&mut run));
            }
        } else {
            run.push(u);
        }
    }
    if !run.is_empty() {
        out.push(run);
    }
    Ok(out)
}

fn sort_by_encoding<T: fmt::Display>(v: &mut Vec<T>) {
    let mut keyed: Vec<(String, T)> = v.drain(..).map(|p| (p.to_string(), p)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    v.extend(keyed.into_iter().map(|(_, p)| p));
}

/// All partitions of `[n]`, ordered by their text encoding.
pub fn enumerate_set_partitions(n: usize, limits: &Limits) -> Result<Vec<SetPartition>> {
    if n == 0 || n > limits.max_set {
        return Err(Error::SizeLimit { what: "set partitions", n, max: limits.max_set });
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(x: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        if x > n {
            out.push(SetPartition::from_canonical(blocks.clone()));
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(x);
            rec(x + 1, n, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![x]);
        rec(x + 1, n, blocks, out);
        blocks.pop();
    }
    rec(1, n, &mut blocks, &mut out);
    sort_by_encoding(&mut out);
    Ok(out)
}

/// Non-crossing partitions of the integer interval `lo..=hi`, blocks unsorted.
fn nc_interval(lo: usize, hi: usize) -> Vec<Vec<Vec<usize>>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    // The block of `lo` is {lo = b0 < b1 < ... < bk}; each gap between
    // consecutive members, and the tail after bk, is filled independently.
    let mut out = Vec::new();
    let mut stack: Vec<usize> = vec![lo];
    fn grow(stack: &mut Vec<usize>, hi: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        // option: close the block here
        let mut pieces: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        for w in stack.windows(2) {
            pieces.push(nc_interval(w[0] + 1, w[1] - 1));
        }
        pieces.push(nc_interval(*stack.last().unwrap() + 1, hi));
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![stack.clone()]];
        for piece in &pieces {
            let mut next = Vec::with_capacity(acc.len() * piece.len());
            for a in &acc {
                for p in piece {
                    let mut c = a.clone();
                    c.extend(p.iter().cloned());
                    next.push(c);
                }
            }
            acc = next;
        }
        out.extend(acc);
        // option: extend the block with a later element
        let last = *stack.last().unwrap();
        for nxt in last + 1..=hi {
            stack.push(nxt);
            grow(stack, hi, out);
            stack.pop();
        }
    }
    grow(&mut stack, hi, &mut out);
    out
}

/// All non-crossing partitions of `[n]`, ordered by their text encoding.
pub fn enumerate_nc_partitions(n: usize, limits: &Limits) -> Result<Vec<NonCrossingPartition>> {
    if n == 0 || n > limits.max_nc {
        return Err(Error::SizeLimit { what: "non-crossing partitions", n, max: limits.max_nc });
    }
    let mut out: Vec<NonCrossingPartition> = nc_interval(1, n)
        .into_iter()
        .map(|mut blocks| {
            blocks.sort_unstable_by_key(|b| b[0]);
            NonCrossingPartition(SetPartition::from_canonical(blocks))
        })
        .collect();
    sort_by_encoding(&mut out);
    Ok(out)
}

/// Shared, lazily filled table of `NC_n` lists (default limits).
pub fn nc_partitions_cached(n: usize) -> Result<Arc<Vec<NonCrossingPartition>>> {
    static CACHE: OnceLock<Mutex<Vec<Option<Arc<Vec<NonCrossingPartition>>>>>> = OnceLock::new();
    let limits = Limits::default();
    if n == 0 || n > limits.max_nc {
        return Err(Error::SizeLimit { what: "non-crossing partitions", n, max: limits.max_nc });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(vec![None; limits.max_nc + 1]));
    if let Some(v) = &cache.lock().unwrap()[n] {
        return Ok(v.clone());
    }
    let v = Arc::new(enumerate_nc_partitions(n, &limits)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard[n].get_or_insert(v).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn nc(s: &str) -> NonCrossingPartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_canonicalise() {
        let p = sp("{3,2}{1,4}");
        assert_eq!(p.to_string(), "{1,4}{2,3}");
        assert_eq!(sp("{1,4}{2,3} on {1,2,3,4}"), p);
        assert!("{1,4}{2,3} on {1,2,3}".parse::<SetPartition>().is_err());
        assert!("{1,2}{2}".parse::<SetPartition>().is_err());
        assert!("{1}{}".parse::<SetPartition>().is_err());
        assert_eq!(sp("{}"), SetPartition::empty());
        assert_eq!(sp(r#"{"blocks": [[2,3],[1,4]]}"#), p);
    }

    #[test]
    fn restriction_keeps_blocks_ordered() {
        let r = sp("{1,5}{2,3}").restrict(&[3, 5]);
        assert_eq!(r.blocks(), &[vec![3], vec![5]]);
        assert_eq!(r.standardize().to_string(), "{1}{2}");
    }

    #[test]
    fn json_encoding() {
        let p = sp("{1,4}{2,3}");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"blocks":[[1,4],[2,3]]}"#);
    }

    #[test]
    fn crossing_examples() {
        assert!(!sp("{1,3}{2,4}").is_noncrossing());
        assert!(sp("{1,4}{2,3}").is_noncrossing());
        assert!(sp("{1,2,3,4,5}").is_noncrossing());
        assert!(!sp("{1,5}{2,6}{3,4}").is_noncrossing());
        assert!(nc("{1,6}{2}{3,5}{4}").block_count() == 4);
    }

    #[test]
    fn refinement() {
        let zero = SetPartition::finest(&[1, 2, 3]).unwrap();
        let one = SetPartition::coarsest(&[1, 2, 3]).unwrap();
        assert!(zero.refines(&one).unwrap());
        assert!(!one.refines(&zero).unwrap());
        assert!(!sp("{1,2}{3}").refines(&sp("{1,3}{2}")).unwrap());
        assert!(sp("{1,2}{3}").refines(&sp("{1,2}{3}")).unwrap());
        assert!(matches!(sp("{1}{2}").refines(&sp("{1,3}")), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn block_relations_of_worked_example() {
        let l = nc("{1,3,8}{2}{4,6,7}{5}{9,10}");
        assert_eq!(l.block_relation(1, 0).unwrap(), BlockRelation::NestedInside);
        assert_eq!(l.block_relation(4, 0).unwrap(), BlockRelation::DisjointAfter);
        assert_eq!(l.block_relation(3, 2).unwrap(), BlockRelation::NestedInside);
        assert_eq!(l.block_relation(2, 0).unwrap(), BlockRelation::NestedInside);
        assert_eq!(l.block_relation(0, 4).unwrap(), BlockRelation::DisjointBefore);
        assert!(l.block_relation(2, 2).is_err());
        assert!(l.block_relation(0, 5).is_err());
    }

    #[test]
    fn standardization() {
        let l = nc("{3,6,10}{4,5}{8}");
        assert_eq!(l.standardize().to_string(), "{1,4,6}{2,3}{5}");
        assert_eq!(nc("{2,9}").standardize().to_string(), "{1,2}");
        let m = nc("{1,4}{2,3}");
        assert_eq!(m.standardize(), m);
    }

    #[test]
    fn components() {
        let u = [1, 2, 3, 4];
        assert_eq!(connected_components(&[1, 2], &u).unwrap(), vec![vec![3, 4]]);
        assert_eq!(connected_components(&[3], &u).unwrap(), vec![vec![1, 2], vec![4]]);
        assert!(connected_components(&u, &u).unwrap().is_empty());
        assert!(connected_components(&[5], &u).is_err());
        // relative to a non-interval universe, gaps do not separate
        assert_eq!(connected_components(&[4], &[1, 3, 4, 7, 9]).unwrap(), vec![vec![1, 3], vec![7, 9]]);
    }

    #[test]
    fn splits_of_nested_pair() {
        let l = nc("{1,3}{2}");
        let s = l.admissible_splits();
        assert_eq!(s.len(), 3);
        let render: Vec<String> = s
            .iter()
            .map(|x| {
                let comps: Vec<String> = x.components.iter().map(|c| c.to_string()).collect();
                format!("{} / {}", x.q_part, comps.join("|"))
            })
            .collect();
        assert!(render.contains(&"{} / {1,3}{2}".to_string()));
        assert!(render.contains(&"{1,3}{2} / ".to_string()));
        assert!(render.contains(&"{1,3} / {2}".to_string()));
        assert!(!render.iter().any(|r| r.starts_with("{2} /")));
    }

    #[test]
    fn splits_of_worked_example_include_listed_ones() {
        let l = nc("{1,3,8}{2}{4,6,7}{5}{9,10}");
        let qs: Vec<String> = l.admissible_splits().iter().map(|s| s.q_part.to_string()).collect();
        assert!(qs.contains(&"{1,3,8}{2}{4,6,7}{5}".to_string()));
        assert!(qs.contains(&"{1,3,8}{2}{9,10}".to_string()));
        assert!(qs.contains(&"{1,3,8}{9,10}".to_string()));
        // L_1 in the complement forces everything nested in it there too
        assert!(!qs.contains(&"{2}".to_string()));
    }

    #[test]
    fn single_block_has_two_splits() {
        assert_eq!(nc("{1,2,3}").admissible_splits().len(), 2);
    }

    #[test]
    fn enumeration_small_cases() {
        let lim = Limits::default();
        assert_eq!(enumerate_set_partitions(1, &lim).unwrap(), vec![sp("{1}")]);
        let p3 = enumerate_set_partitions(3, &lim).unwrap();
        assert_eq!(p3.len(), 5);
        assert!(p3.contains(&sp("{1}{2}{3}")) && p3.contains(&sp("{1,2,3}")));
        assert_eq!(enumerate_set_partitions(4, &lim).unwrap().len(), 15);
        let nc4 = enumerate_nc_partitions(4, &lim).unwrap();
        assert_eq!(nc4.len(), 14);
        assert!(!nc4.iter().any(|p| p.to_string() == "{1,3}{2,4}"));
        assert_eq!(enumerate_nc_partitions(1, &lim).unwrap()[0].to_string(), "{1}");
    }

    #[test]
    fn enumeration_is_sorted_by_encoding() {
        let lim = Limits::default();
        let v = enumerate_nc_partitions(5, &lim).unwrap();
        let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        let mut sorted = s.clone();
        sorted.sort();
        assert_eq!(s, sorted);
    }

    #[test]
    fn enumeration_limits() {
        let lim = Limits { max_set: 3, max_nc: 4 };
        assert!(matches!(enumerate_set_partitions(4, &lim), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_nc_partitions(5, &lim), Err(Error::SizeLimit { .. })));
        assert!(enumerate_nc_partitions(0, &lim).is_err());
    }
}
