//! Bar words over a family of atoms, finite linear combinations of them, and
//! the multiplicatively extended coproduct with its half splittings.

use std::cmp::Ordering;
use std::collections::{btree_map, BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::partition::NonCrossingPartition;
use crate::word::{Alphabet, Word};

/// One term of the coproduct of a single atom: `left ⊗ right[0]|right[1]|…`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSplit<A> {
    pub left: Option<A>,
    pub right: Vec<A>,
    /// Whether the first position of the atom went to the left leg.
    pub first_left: bool,
}

/// A generator of one of the unshuffle bialgebras.
pub trait Atom: Clone + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn degree(&self) -> usize;

    /// Every term of the full coproduct of this atom, with multiplicity.
    fn splits(&self) -> Arc<[AtomSplit<Self>]>;

    fn render(&self, alphabet: &Alphabet) -> String;

    fn parse(s: &str, alphabet: &Alphabet) -> Result<Self>;

    /// All atoms of the given degree.
    fn basis(alphabet: &Alphabet, degree: usize) -> Result<Vec<Self>>;

    /// `basis(alphabet, degree).len()` without enumerating, saturating.
    fn basis_len(alphabet: &Alphabet, degree: usize) -> usize;
}

/// `Catalan(n)`, saturating.
pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    c as usize
}

/// Process-wide memo for atom splits; dropped wholesale once it gets large.
pub(crate) struct SplitCache<A: Atom>(OnceLock<Mutex<HashMap<A, Arc<[AtomSplit<A>]>>>>);

impl<A: Atom> SplitCache<A> {
    const CAP: usize = 200_000;

    pub(crate) const fn new() -> Self {
        SplitCache(OnceLock::new())
    }

    pub(crate) fn get(&self, a: &A, compute: impl FnOnce() -> Vec<AtomSplit<A>>) -> Arc<[AtomSplit<A>]> {
        let m = self.0.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(s) = m.lock().unwrap().get(a) {
            return s.clone();
        }
        let s: Arc<[AtomSplit<A>]> = compute().into();
        let mut g = m.lock().unwrap();
        if g.len() >= Self::CAP {
            g.clear();
        }
        g.insert(a.clone(), s.clone());
        s
    }
}

/// `w_1|…|w_m`; the empty list is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarWord<A>(Vec<A>);

impl<A: Atom> BarWord<A> {
    pub fn unit() -> Self {
        BarWord(Vec::new())
    }

    pub fn new(parts: Vec<A>) -> Self {
        BarWord(parts)
    }

    pub fn atom(a: A) -> Self {
        BarWord(vec![a])
    }

    pub fn parts(&self) -> &[A] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<A> {
        self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Atom::degree).sum()
    }

    pub fn concat(&self, other: &BarWord<A>) -> BarWord<A> {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BarWord(v)
    }

    /// Parses `x|y|z` or `1`.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(BarWord::unit());
        }
        s.split('|').map(|p| A::parse(p.trim(), alphabet)).collect::<Result<Vec<_>>>().map(BarWord)
    }

    /// All bar words of total degree `d`, via compositions of `d`.
    pub fn basis(alphabet: &Alphabet, d: usize) -> Result<Vec<Self>> {
        if d == 0 {
            return Ok(vec![BarWord::unit()]);
        }
        let mut per_degree = Vec::with_capacity(d + 1);
        per_degree.push(Vec::new());
        for k in 1..=d {
            per_degree.push(A::basis(alphabet, k)?);
        }
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<A>)> = vec![(0, Vec::new())];
        while let Some((deg, parts)) = stack.pop() {
            if deg == d {
                out.push(BarWord(parts));
                continue;
            }
            for k in 1..=d - deg {
                for a in &per_degree[k] {
                    let mut p = parts.clone();
                    p.push(a.clone());
                    stack.push((deg + k, p));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// All bar words of degree `1..=max`, plus the unit when `with_unit`.
    pub fn basis_up_to(alphabet: &Alphabet, max: usize, with_unit: bool) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for d in (if with_unit { 0 } else { 1 })..=max {
            out.extend(Self::basis(alphabet, d)?);
        }
        Ok(out)
    }
}

impl<A: Atom> PartialOrd for BarWord<A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: Atom> Ord for BarWord<A> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Keys that can be printed against an alphabet.
pub trait Render {
    fn render(&self, alphabet: &Alphabet) -> String;
}

impl<A: Atom> Render for BarWord<A> {
    fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|a| a.render(alphabet)).collect::<Vec<_>>().join("|")
    }
}

impl<A: Atom> Render for (BarWord<A>, BarWord<A>) {
    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{} ⊗ {}", self.0.render(alphabet), self.1.render(alphabet))
    }
}

impl<A: Atom> Render for (BarWord<A>, BarWord<A>, BarWord<A>) {
    fn render(&self, alphabet: &Alphabet) -> String {
        format!("{} ⊗ {} ⊗ {}", self.0.render(alphabet), self.1.render(alphabet), self.2.render(alphabet))
    }
}

/// A finite linear combination with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear<K: Ord>(BTreeMap<K, Coefficient>);

pub type Element<A> = Linear<BarWord<A>>;
pub type Tensor2<A> = Linear<(BarWord<A>, BarWord<A>)>;
pub type Tensor3<A> = Linear<(BarWord<A>, BarWord<A>, BarWord<A>)>;

impl<K: Ord> Default for Linear<K> {
    fn default() -> Self {
        Linear(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Linear<K> {
    pub fn zero() -> Self {
        Linear(BTreeMap::new())
    }

    pub fn term(k: K, c: Coefficient) -> Self {
        let mut l = Linear::zero();
        l.add_term(k, c);
        l
    }

    pub fn basis(k: K) -> Self {
        Linear::term(k, Coefficient::one())
    }

    pub fn add_term(&mut self, k: K, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_one(&mut self, k: K) {
        self.add_term(k, Coefficient::one())
    }

    pub fn coefficient(&self, k: &K) -> Coefficient {
        self.0.get(k).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Coefficient> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Linear::zero();
        for (k, v) in &self.0 {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add_assign_scaled(&mut self, other: &Linear<K>, c: &Coefficient) {
        for (k, v) in &other.0 {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Sum of coefficients; useful as a cheap multiplicity count.
    pub fn total(&self) -> Coefficient {
        self.0.values().cloned().sum()
    }
}

impl<K: Ord + Clone> std::ops::Add for &Linear<K> {
    type Output = Linear<K>;
    fn add(self, rhs: &Linear<K>) -> Linear<K> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Coefficient::one());
        out
    }
}

impl<K: Ord + Clone> std::ops::Sub for &Linear<K> {
    type Output = Linear<K>;
    fn sub(self, rhs: &Linear<K>) -> Linear<K> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Coefficient::from_int(-1));
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coefficient)> for Linear<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coefficient)>>(iter: I) -> Self {
        let mut out = Linear::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a Linear<K> {
    type Item = (&'a K, &'a Coefficient);
    type IntoIter = btree_map::Iter<'a, K, Coefficient>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<K: Ord + Render> Linear<K> {
    /// One-line text form: `2·x ⊗ y - z ⊗ 1`, `0` when empty.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.0.iter().enumerate() {
            let key = k.render(alphabet);
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let s = mag.to_string();
                if mag.is_symbolic() && mag.terms().len() > 1 {
                    out.push_str(&format!("({s})·"));
                } else {
                    out.push_str(&format!("{s}·"));
                }
            }
            out.push_str(&key);
        }
        out
    }
}

impl<A: Atom> Linear<BarWord<A>> {
    pub fn unit() -> Self {
        Linear::basis(BarWord::unit())
    }

    /// Bar-concatenation product, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Linear::zero();
        for (a, c) in self {
            for (b, d) in other {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }
}

impl<A: Atom> Linear<(BarWord<A>, BarWord<A>)> {
    /// Leg-wise product in the tensor square.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Linear::zero();
        for ((a1, a2), c) in self {
            for ((b1, b2), d) in other {
                out.add_term((a1.concat(b1), a2.concat(b2)), c * d);
            }
        }
        out
    }
}

/// Which coproduct to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `Δ`
    Full,
    /// `Δ⁺_≺`: first position of the first atom on the left.
    LeftPlus,
    /// `Δ⁺_≻`
    RightPlus,
    /// `Δ_≺ = Δ⁺_≺ − b⊗1`
    Left,
    /// `Δ_≻ = Δ⁺_≻ − 1⊗b`
    Right,
    /// `Δ̄ = Δ − b⊗1 − 1⊗b`
    Reduced,
}

impl Variant {
    fn admits_first(self, first_left: bool) -> bool {
        match self {
            Variant::LeftPlus | Variant::Left => first_left,
            Variant::RightPlus | Variant::Right => !first_left,
            Variant::Full | Variant::Reduced => true,
        }
    }

    fn drops_b_tensor_1(self) -> bool {
        matches!(self, Variant::Left | Variant::Reduced)
    }

    fn drops_1_tensor_b(self) -> bool {
        matches!(self, Variant::Right | Variant::Reduced)
    }
}

/// Calls `f(left, right)` once per term (with multiplicity) of the chosen
/// coproduct of `b`. On the unit, `Δ(1) = Δ⁺_≻(1) = 1⊗1` and every other
/// variant vanishes.
pub fn for_each_term<A: Atom>(b: &BarWord<A>, v: Variant, mut f: impl FnMut(BarWord<A>, BarWord<A>)) {
    let parts = b.parts();
    if parts.is_empty() {
        if matches!(v, Variant::Full | Variant::RightPlus) {
            f(BarWord::unit(), BarWord::unit());
        }
        return;
    }
    let lists: Vec<Arc<[AtomSplit<A>]>> = parts.iter().map(Atom::splits).collect();
    let first: Vec<&AtomSplit<A>> = lists[0].iter().filter(|s| v.admits_first(s.first_left)).collect();
    let m = parts.len();
    let limit = |j: usize| if j == 0 { first.len() } else { lists[j].len() };
    let mut idx = vec![0usize; m];
    loop {
        let choice = |j: usize| if j == 0 { first[idx[0]] } else { &lists[j][idx[j]] };
        let skip = (v.drops_b_tensor_1() && (0..m).all(|j| choice(j).right.is_empty()))
            || (v.drops_1_tensor_b() && (0..m).all(|j| choice(j).left.is_none()));
        if !skip {
            let mut left = Vec::with_capacity(m);
            let mut right = Vec::new();
            for j in 0..m {
                let s = choice(j);
                if let Some(l) = &s.left {
                    left.push(l.clone());
                }
                right.extend(s.right.iter().cloned());
            }
            f(BarWord(left), BarWord(right));
        }
        let mut j = m;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < limit(j) {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Like [`for_each_term`] restricted to the terms whose left leg is a single
/// atom; these are the only terms an infinitesimal functional can see.
pub fn for_each_single_left<A: Atom>(b: &BarWord<A>, v: Variant, mut f: impl FnMut(&A, BarWord<A>)) {
    let parts = b.parts();
    let m = parts.len();
    for j in 0..m {
        if j > 0 && !v.admits_first(false) {
            break;
        }
        for s in parts[j].splits().iter() {
            let Some(l) = &s.left else { continue };
            if j == 0 && !v.admits_first(s.first_left) {
                continue;
            }
            if m == 1 && s.right.is_empty() && v.drops_b_tensor_1() {
                continue;
            }
            let mut right = Vec::with_capacity(m + s.right.len());
            right.extend_from_slice(&parts[..j]);
            right.extend(s.right.iter().cloned());
            right.extend_from_slice(&parts[j + 1..]);
            f(l, BarWord(right));
        }
    }
}

pub fn coproduct<A: Atom>(b: &BarWord<A>, v: Variant) -> Tensor2<A> {
    let mut out = Linear::zero();
    for_each_term(b, v, |l, r| out.add_one((l, r)));
    out
}

pub fn coproduct_element<A: Atom>(x: &Element<A>, v: Variant) -> Tensor2<A> {
    let mut out = Linear::zero();
    for (b, c) in x {
        for_each_term(b, v, |l, r| out.add_term((l, r), c.clone()));
    }
    out
}

/// `(Δ_v ⊗ id)(t)`
pub fn apply_left<A: Atom>(t: &Tensor2<A>, v: Variant) -> Tensor3<A> {
    let mut out = Linear::zero();
    for ((l, r), c) in t {
        for_each_term(l, v, |x, y| out.add_term((x, y, r.clone()), c.clone()));
    }
    out
}

/// `(id ⊗ Δ_v)(t)`
pub fn apply_right<A: Atom>(t: &Tensor2<A>, v: Variant) -> Tensor3<A> {
    let mut out = Linear::zero();
    for ((l, r), c) in t {
        for_each_term(r, v, |x, y| out.add_term((l.clone(), x, y), c.clone()));
    }
    out
}

/// Coefficient of the unit.
pub fn counit<A: Atom>(x: &Element<A>) -> Coefficient {
    x.coefficient(&BarWord::unit())
}

/// `(ε ⊗ id)(t)`
pub fn counit_left<A: Atom>(t: &Tensor2<A>) -> Element<A> {
    t.iter().filter(|((l, _), _)| l.is_unit()).map(|((_, r), c)| (r.clone(), c.clone())).collect()
}

/// `(id ⊗ ε)(t)`
pub fn counit_right<A: Atom>(t: &Tensor2<A>) -> Element<A> {
    t.iter().filter(|((_, r), _)| r.is_unit()).map(|((l, _), c)| (l.clone(), c.clone())).collect()
}

/// Chosen positions and the maximal runs of the rest.
type Pattern = (Vec<usize>, Vec<Vec<usize>>);

fn word_patterns(n: usize) -> Arc<Vec<Pattern>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Pattern>>>>> = OnceLock::new();
    let m = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = m.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n < 32, "word too long to split");
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut comps = Vec::new();
        let mut run = Vec::new();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                if !run.is_empty() {
                    comps.push(std::mem::take(&mut run));
                }
            } else {
                run.push(i);
            }
        }
        if !run.is_empty() {
            comps.push(run);
        }
        out.push((s, comps));
    }
    let p = Arc::new(out);
    m.lock().unwrap().insert(n, p.clone());
    p
}

static WORD_SPLITS: SplitCache<Word> = SplitCache::new();

impl Atom for Word {
    fn degree(&self) -> usize {
        self.len()
    }

    fn splits(&self) -> Arc<[AtomSplit<Word>]> {
        WORD_SPLITS.get(self, || {
            word_patterns(self.len())
                .iter()
                .map(|(s, comps)| AtomSplit {
                    left: self.restrict(s),
                    right: comps.iter().map(|c| self.restrict(c).expect("non-empty component")).collect(),
                    first_left: s.first() == Some(&0),
                })
                .collect()
        })
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render_word(self)
    }

    fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        alphabet.parse_word(s)
    }

    fn basis(alphabet: &Alphabet, degree: usize) -> Result<Vec<Self>> {
        Ok(alphabet.words(degree))
    }

    fn basis_len(alphabet: &Alphabet, degree: usize) -> usize {
        alphabet.len().saturating_pow(degree as u32)
    }
}

/// A standard non-crossing partition split into positioned pieces: the left
/// piece and each right piece carry their 0-based positions in `[n]`.
#[derive(Clone, Debug)]
pub(crate) struct ShapeSplit {
    pub(crate) left: Option<(NonCrossingPartition, Vec<usize>)>,
    pub(crate) right: Vec<(NonCrossingPartition, Vec<usize>)>,
    pub(crate) first_left: bool,
}

pub(crate) fn shape_splits(shape: &NonCrossingPartition) -> Arc<Vec<ShapeSplit>> {
    type Table = HashMap<NonCrossingPartition, Arc<Vec<ShapeSplit>>>;
    static CACHE: OnceLock<Mutex<Table>> = OnceLock::new();
    let m = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = m.lock().unwrap().get(shape) {
        return s.clone();
    }
    let piece = |p: &NonCrossingPartition| (p.standardize(), p.carrier().iter().map(|x| x - 1).collect::<Vec<_>>());
    let out: Vec<ShapeSplit> = shape
        .admissible_splits()
        .iter()
        .map(|sp| ShapeSplit {
            left: (!sp.q_part.is_empty()).then(|| piece(&sp.q_part)),
            right: sp.components.iter().map(piece).collect(),
            first_left: sp.q_part.carrier().first() == Some(&1),
        })
        .collect();
    let out = Arc::new(out);
    m.lock().unwrap().insert(shape.clone(), out.clone());
    out
}

/// Checks that `p` can serve as an atom: non-empty and on `[n]`.
pub(crate) fn check_shape(p: &NonCrossingPartition) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidPartition("atoms must be non-empty".into()));
    }
    if !p.is_standard() {
        return Err(Error::CarrierMismatch(format!("{p} is not a partition of [n]")));
    }
    Ok(())
}

static NC_SPLITS: SplitCache<NonCrossingPartition> = SplitCache::new();

impl Atom for NonCrossingPartition {
    fn degree(&self) -> usize {
        self.size()
    }

    fn splits(&self) -> Arc<[AtomSplit<Self>]> {
        NC_SPLITS.get(self, || {
            let st = self.standardize();
            shape_splits(&st)
                .iter()
                .map(|s| AtomSplit {
                    left: s.left.as_ref().map(|(p, _)| p.clone()),
                    right: s.right.iter().map(|(p, _)| p.clone()).collect(),
                    first_left: s.first_left,
                })
                .collect()
        })
    }

    fn render(&self, _alphabet: &Alphabet) -> String {
        self.to_string()
    }

    fn parse(s: &str, _alphabet: &Alphabet) -> Result<Self> {
        let p: NonCrossingPartition = s.parse()?;
        check_shape(&p)?;
        Ok(p)
    }

    fn basis(_alphabet: &Alphabet, degree: usize) -> Result<Vec<Self>> {
        Ok(crate::partition::nc_partitions_cached(degree)?.as_ref().clone())
    }

    fn basis_len(_alphabet: &Alphabet, degree: usize) -> usize {
        catalan(degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alphabet {
        Alphabet::generic(3)
    }

    fn w(s: &str) -> BarWord<Word> {
        BarWord::parse(s, &alpha()).unwrap()
    }

    fn nc(s: &str) -> BarWord<NonCrossingPartition> {
        BarWord::parse(s, &alpha()).unwrap()
    }

    fn t2<A: Atom>(terms: &[(i64, BarWord<A>, BarWord<A>)]) -> Tensor2<A> {
        terms.iter().map(|(c, l, r)| ((l.clone(), r.clone()), Coefficient::from_int(*c))).collect()
    }

    #[test]
    fn degree_one_is_primitive() {
        let a1 = w("a1");
        assert_eq!(coproduct(&a1, Variant::Full), t2(&[(1, a1.clone(), w("1")), (1, w("1"), a1.clone())]));
        assert!(coproduct(&a1, Variant::Reduced).is_zero());
    }

    #[test]
    fn two_letter_word() {
        let d = coproduct(&w("a1.a2"), Variant::Full);
        let expect =
            t2(&[(1, w("a1.a2"), w("1")), (1, w("1"), w("a1.a2")), (1, w("a1"), w("a2")), (1, w("a2"), w("a1"))]);
        assert_eq!(d, expect);
        let left = coproduct(&w("a1.a2"), Variant::LeftPlus);
        assert_eq!(left, t2(&[(1, w("a1.a2"), w("1")), (1, w("a1"), w("a2"))]));
        let right = coproduct(&w("a1.a2"), Variant::RightPlus);
        assert_eq!(right, t2(&[(1, w("1"), w("a1.a2")), (1, w("a2"), w("a1"))]));
        assert_eq!(&left + &right, d);
    }

    #[test]
    fn three_letter_word_has_bar_term() {
        let d = coproduct(&w("a1.a2.a3"), Variant::Full);
        assert_eq!(d.len(), 8);
        assert!(d.coefficient(&(w("a2"), w("a1|a3"))).is_one());
    }

    #[test]
    fn bar_word_extension() {
        assert_eq!(coproduct(&w("1"), Variant::Full), t2(&[(1, w("1"), w("1"))]));
        let d = coproduct(&w("a1|a2"), Variant::Full);
        let expect =
            t2(&[(1, w("a1|a2"), w("1")), (1, w("a1"), w("a2")), (1, w("a2"), w("a1")), (1, w("1"), w("a1|a2"))]);
        assert_eq!(d, expect);
        let l = coproduct(&w("a1|a2"), Variant::LeftPlus);
        assert_eq!(l, t2(&[(1, w("a1|a2"), w("1")), (1, w("a1"), w("a2"))]));
    }

    #[test]
    fn extension_is_multiplicative() {
        let (a, b) = (w("a1.a3|a2"), w("a2.a1"));
        for v in [Variant::Full, Variant::LeftPlus, Variant::RightPlus] {
            let lhs = coproduct(&a.concat(&b), v);
            let rhs = coproduct(&a, v).mul(&coproduct(&b, Variant::Full));
            assert_eq!(lhs, rhs, "{v:?}");
        }
    }

    #[test]
    fn reduced_variants() {
        let b = w("a1.a2|a3");
        let full = coproduct(&b, Variant::Full);
        let bt1 = t2(&[(1, b.clone(), w("1"))]);
        let t1b = t2(&[(1, w("1"), b.clone())]);
        assert_eq!(coproduct(&b, Variant::Left), &coproduct(&b, Variant::LeftPlus) - &bt1);
        assert_eq!(coproduct(&b, Variant::Right), &coproduct(&b, Variant::RightPlus) - &t1b);
        assert_eq!(coproduct(&b, Variant::Reduced), &(&full - &bt1) - &t1b);
    }

    #[test]
    fn single_left_terms_agree_with_filter() {
        for b in [w("a1.a2.a3"), w("a1|a2.a3"), w("a3.a1|a2|a1")] {
            for v in
                [Variant::Full, Variant::LeftPlus, Variant::RightPlus, Variant::Left, Variant::Right, Variant::Reduced]
            {
                let mut fast = Linear::zero();
                for_each_single_left(&b, v, |l, r| fast.add_one((BarWord::atom(l.clone()), r)));
                let slow: Tensor2<Word> = coproduct(&b, v)
                    .iter()
                    .filter(|((l, _), _)| l.len() == 1)
                    .map(|(k, c)| (k.clone(), c.clone()))
                    .collect();
                assert_eq!(fast, slow, "{v:?} on {}", b.render(&alpha()));
            }
        }
    }

    #[test]
    fn nc_worked_expansions() {
        let d = coproduct(&nc("{1,4}{2,3}"), Variant::Full);
        assert_eq!(
            d,
            t2(&[(1, nc("{1,4}{2,3}"), nc("1")), (1, nc("1"), nc("{1,4}{2,3}")), (1, nc("{1,2}"), nc("{1,2}"))])
        );

        let d = coproduct(&nc("{1,5}{2}{3,4}"), Variant::Full);
        let expect = t2(&[
            (1, nc("{1,5}{2}{3,4}"), nc("1")),
            (1, nc("1"), nc("{1,5}{2}{3,4}")),
            (1, nc("{1,3}{2}"), nc("{1,2}")),
            (1, nc("{1,4}{2,3}"), nc("{1}")),
            (1, nc("{1,2}"), nc("{1}{2,3}")),
        ]);
        assert_eq!(d, expect);

        let d = coproduct(&nc("{1,2}{3}{4}"), Variant::Full);
        let expect = t2(&[
            (1, nc("{1,2}{3}{4}"), nc("1")),
            (1, nc("1"), nc("{1,2}{3}{4}")),
            (1, nc("{1,2}"), nc("{1}{2}")),
            (2, nc("{1,2}{3}"), nc("{1}")),
            (1, nc("{1}"), nc("{1,2}{3}")),
            (1, nc("{1}"), nc("{1,2}|{1}")),
            (1, nc("{1}{2}"), nc("{1,2}")),
        ]);
        assert_eq!(d, expect);
    }

    #[test]
    fn nc_halves() {
        let b = nc("{1,3}{2}");
        assert_eq!(coproduct(&b, Variant::LeftPlus), t2(&[(1, b.clone(), nc("1")), (1, nc("{1,2}"), nc("{1}"))]));
        assert_eq!(coproduct(&b, Variant::RightPlus), t2(&[(1, nc("1"), b.clone())]));
        let b = nc("{1,4}{2,3}");
        assert_eq!(coproduct(&b, Variant::LeftPlus), t2(&[(1, b.clone(), nc("1")), (1, nc("{1,2}"), nc("{1,2}"))]));
    }

    #[test]
    fn counits() {
        let x: Element<Word> =
            [(w("1"), Coefficient::from_int(3)), (w("a1"), Coefficient::from_int(2))].into_iter().collect();
        assert_eq!(counit(&x), Coefficient::from_int(3));
        assert!(counit(&Element::basis(w("a1.a2"))).is_zero());
        let b = w("a1.a2|a3");
        let d = coproduct(&b, Variant::Full);
        assert_eq!(counit_left(&d), Element::basis(b.clone()));
        assert_eq!(counit_right(&d), Element::basis(b));
    }

    #[test]
    fn atoms_must_be_standard() {
        assert!(BarWord::<NonCrossingPartition>::parse("{2,3}", &alpha()).is_err());
        assert!(BarWord::<NonCrossingPartition>::parse("{1,3}{2,4}", &alpha()).is_err());
    }

    #[test]
    fn rendering() {
        let d = coproduct(&nc("{1,4}{2,3}"), Variant::Full);
        assert_eq!(d.render(&alpha()), "1 ⊗ {1,4}{2,3} + {1,2} ⊗ {1,2} + {1,4}{2,3} ⊗ 1");
        let x = &Element::basis(w("a1")).scale(&Coefficient::from_int(2)) - &Element::basis(w("a2.a3"));
        assert_eq!(x.render(&alpha()), "2·a1 - a2.a3");
        assert_eq!(Element::<Word>::zero().render(&alpha()), "0");
    }

    #[test]
    fn basis_counts() {
        // Compositions weighted by 3^k words: 3, 3^2+3^2, …
        assert_eq!(BarWord::<Word>::basis(&alpha(), 2).unwrap().len(), 9 + 9);
        assert_eq!(BarWord::<NonCrossingPartition>::basis(&alpha(), 3).unwrap().len(), 5 + 2 + 2 + 1);
    }
}
