//! Truncated linear forms on the bar-word algebras, their convolution and
//! half-shuffle products, characters, and the half-shuffle exponential.

use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coefficient;
use crate::decorated::{sp, DecoratedNC};
use crate::error::{Error, Result};
use crate::hopf::{for_each_single_left, for_each_term, Atom, BarWord, Element, Render, Variant};
use crate::word::{Alphabet, Word};

pub const DEFAULT_TRUNCATION: usize = 8;

/// Bar words enumerated by the built-in verification of fixed-point
/// solutions; higher degrees are left to explicit checks.
const VERIFY_BUDGET: usize = 20_000;

type AtomRule<A> = Arc<dyn Fn(&A) -> Result<Coefficient> + Send + Sync>;
type BarRule<A> = Arc<dyn Fn(&BarWord<A>) -> Result<Coefficient> + Send + Sync>;

enum Rule<A: Atom> {
    Augmentation,
    /// Supported on single atoms.
    Infinitesimal(AtomRule<A>),
    /// Product of the atom values, 1 on the unit.
    Multiplicative(AtomRule<A>),
    General(BarRule<A>),
    Combination(Vec<(Coefficient, Functional<A>)>),
    Product(Functional<A>, Functional<A>, Variant),
    /// `Φ = e + κ≺Φ`; the node itself is `Φ`.
    FixedPoint(Functional<A>),
    /// The infinitesimal `κ` with `Φ = e + κ≺Φ`, from `Φ`.
    Generator(Functional<A>),
}

struct Node<A: Atom> {
    alphabet: Alphabet,
    truncation: usize,
    infinitesimal: bool,
    rule: Rule<A>,
    memo: Mutex<HashMap<BarWord<A>, Coefficient>>,
}

/// A linear form defined on basis bar words of degree at most the truncation.
/// Cloning shares the evaluation cache.
pub struct Functional<A: Atom>(Arc<Node<A>>);

impl<A: Atom> Clone for Functional<A> {
    fn clone(&self) -> Self {
        Functional(self.0.clone())
    }
}

impl<A: Atom> fmt::Debug for Functional<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functional")
            .field("alphabet", &self.0.alphabet.names())
            .field("truncation", &self.0.truncation)
            .field("infinitesimal", &self.0.infinitesimal)
            .finish_non_exhaustive()
    }
}

/// Shapes of pseudo-random test functionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    /// Independent values on every basis bar word, including the unit.
    General,
    /// As `General` but vanishing on the unit.
    Augmented,
    Infinitesimal,
    Character,
}

/// Small rational in `[-5, 5]` with denominator at most 3, determined by
/// `(seed, key)`.
pub fn random_rational(seed: u64, key: &str) -> Coefficient {
    let mut h = DefaultHasher::new();
    seed.hash(&mut h);
    key.hash(&mut h);
    let mut rng = ChaCha8Rng::seed_from_u64(h.finish());
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Coefficient::from_ratio(num, den)
}

impl<A: Atom> Functional<A> {
    fn build(alphabet: &Alphabet, truncation: usize, infinitesimal: bool, rule: Rule<A>) -> Self {
        Functional(Arc::new(Node {
            alphabet: alphabet.clone(),
            truncation,
            infinitesimal,
            rule,
            memo: Mutex::new(HashMap::new()),
        }))
    }

    /// The augmentation `e`: 1 on the unit, 0 elsewhere.
    pub fn augmentation(alphabet: &Alphabet, truncation: usize) -> Self {
        Self::build(alphabet, truncation, false, Rule::Augmentation)
    }

    pub fn zero(alphabet: &Alphabet, truncation: usize) -> Self {
        Self::build(alphabet, truncation, true, Rule::Combination(Vec::new()))
    }

    /// Supported on single atoms, with the given values there.
    pub fn infinitesimal<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&A) -> Coefficient + Send + Sync + 'static,
    {
        Self::build(alphabet, truncation, true, Rule::Infinitesimal(Arc::new(move |a| Ok(f(a)))))
    }

    /// The multiplicative extension of atom values to bar words.
    pub fn multiplicative<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&A) -> Coefficient + Send + Sync + 'static,
    {
        Self::build(alphabet, truncation, false, Rule::Multiplicative(Arc::new(move |a| Ok(f(a)))))
    }

    /// Multiplicative extension of a fallible atom rule; errors surface on
    /// evaluation.
    pub fn multiplicative_try<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&A) -> Result<Coefficient> + Send + Sync + 'static,
    {
        Self::build(alphabet, truncation, false, Rule::Multiplicative(Arc::new(f)))
    }

    /// Infinitesimal form from an atom table; absent atoms evaluate to zero.
    pub fn infinitesimal_from_table(alphabet: &Alphabet, truncation: usize, table: HashMap<A, Coefficient>) -> Self {
        Self::infinitesimal(alphabet, truncation, move |a| table.get(a).cloned().unwrap_or_else(Coefficient::zero))
    }

    /// Multiplicative extension of an atom table, which must cover every atom
    /// up to the truncation.
    pub fn multiplicative_from_table(
        alphabet: &Alphabet,
        truncation: usize,
        table: HashMap<A, Coefficient>,
    ) -> Result<Self> {
        for d in 1..=truncation {
            for a in A::basis(alphabet, d)? {
                if !table.contains_key(&a) {
                    return Err(Error::MissingValue(a.render(alphabet)));
                }
            }
        }
        let rule: AtomRule<A> =
            Arc::new(move |a: &A| table.get(a).cloned().ok_or_else(|| Error::MissingValue(format!("{a:?}"))));
        Ok(Self::build(alphabet, truncation, false, Rule::Multiplicative(rule)))
    }

    /// An arbitrary rule on basis bar words.
    pub fn from_fn<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&BarWord<A>) -> Result<Coefficient> + Send + Sync + 'static,
    {
        Self::build(alphabet, truncation, false, Rule::General(Arc::new(f)))
    }

    /// Deterministic pseudo-random rational functional.
    pub fn random(alphabet: &Alphabet, truncation: usize, seed: u64, kind: RandomKind) -> Self {
        let al = alphabet.clone();
        match kind {
            RandomKind::General | RandomKind::Augmented => Self::from_fn(alphabet, truncation, move |b| {
                if b.is_unit() && kind == RandomKind::Augmented {
                    return Ok(Coefficient::zero());
                }
                Ok(random_rational(seed, &b.render(&al)))
            }),
            RandomKind::Infinitesimal => {
                Self::infinitesimal(alphabet, truncation, move |a| random_rational(seed, &a.render(&al)))
            }
            RandomKind::Character => {
                Self::multiplicative(alphabet, truncation, move |a| random_rational(seed, &a.render(&al)))
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.0.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.0.truncation
    }

    /// Whether the form is infinitesimal by construction.
    pub fn is_infinitesimal_by_construction(&self) -> bool {
        self.0.infinitesimal
    }

    pub fn eval(&self, b: &BarWord<A>) -> Result<Coefficient> {
        let d = b.degree();
        if d > self.0.truncation {
            return Err(Error::BeyondTruncation { degree: d, truncation: self.0.truncation });
        }
        if let Some(v) = self.0.memo.lock().unwrap().get(b) {
            return Ok(v.clone());
        }
        let v = self.compute(b)?;
        self.0.memo.lock().unwrap().insert(b.clone(), v.clone());
        Ok(v)
    }

    pub fn eval_atom(&self, a: &A) -> Result<Coefficient> {
        self.eval(&BarWord::atom(a.clone()))
    }

    pub fn eval_element(&self, x: &Element<A>) -> Result<Coefficient> {
        let mut acc = Coefficient::zero();
        for (b, c) in x {
            acc += &(c * &self.eval(b)?);
        }
        Ok(acc)
    }

    fn compute(&self, b: &BarWord<A>) -> Result<Coefficient> {
        match &self.0.rule {
            Rule::Augmentation => Ok(if b.is_unit() { Coefficient::one() } else { Coefficient::zero() }),
            Rule::Infinitesimal(f) => match b.parts() {
                [a] => f(a),
                _ => Ok(Coefficient::zero()),
            },
            Rule::Multiplicative(f) => {
                let mut acc = Coefficient::one();
                for a in b.parts() {
                    acc *= &f(a)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            Rule::General(f) => f(b),
            Rule::Combination(terms) => {
                let mut acc = Coefficient::zero();
                for (c, g) in terms {
                    acc += &(c * &g.eval(b)?);
                }
                Ok(acc)
            }
            Rule::Product(f, g, v) => pair_sum(f, g, b, *v),
            Rule::FixedPoint(kappa) => {
                if b.is_unit() {
                    Ok(Coefficient::one())
                } else {
                    pair_sum(kappa, self, b, Variant::LeftPlus)
                }
            }
            Rule::Generator(phi) => {
                if b.len() != 1 {
                    return Ok(Coefficient::zero());
                }
                Ok(&phi.eval(b)? - &pair_sum(self, phi, b, Variant::Left)?)
            }
        }
    }

    fn compatible(&self, other: &Functional<A>) -> Result<()> {
        if self.0.truncation != other.0.truncation {
            return Err(Error::TruncationMismatch(self.0.truncation, other.0.truncation));
        }
        if self.0.alphabet != other.0.alphabet {
            return Err(Error::CarrierMismatch(format!(
                "alphabets {{{}}} and {{{}}}",
                self.0.alphabet, other.0.alphabet
            )));
        }
        Ok(())
    }

    fn product(&self, other: &Functional<A>, v: Variant) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self::build(&self.0.alphabet, self.0.truncation, false, Rule::Product(self.clone(), other.clone(), v)))
    }

    /// `f * g = m(f⊗g)Δ`
    pub fn convolve(&self, other: &Functional<A>) -> Result<Self> {
        self.product(other, Variant::Full)
    }

    /// `f ≺ g`, summed over `Δ⁺_≺`; vanishes on the unit.
    pub fn prec(&self, other: &Functional<A>) -> Result<Self> {
        self.product(other, Variant::LeftPlus)
    }

    /// `f ≻ g`, summed over `Δ⁺_≻`; equals `f(1)g(1)` on the unit.
    pub fn succ(&self, other: &Functional<A>) -> Result<Self> {
        self.product(other, Variant::RightPlus)
    }

    pub fn linear_combination(terms: &[(Coefficient, &Functional<A>)]) -> Result<Self> {
        let (first, rest) = terms.split_first().ok_or_else(|| Error::InvalidSequence("empty combination".into()))?;
        for (_, g) in rest {
            first.1.compatible(g)?;
        }
        let infinitesimal = terms.iter().all(|(_, g)| g.0.infinitesimal);
        let owned = terms.iter().map(|(c, g)| (c.clone(), (*g).clone())).collect();
        Ok(Self::build(&first.1 .0.alphabet, first.1 .0.truncation, infinitesimal, Rule::Combination(owned)))
    }

    pub fn add(&self, other: &Functional<A>) -> Result<Self> {
        Self::linear_combination(&[(Coefficient::one(), self), (Coefficient::one(), other)])
    }

    pub fn sub(&self, other: &Functional<A>) -> Result<Self> {
        Self::linear_combination(&[(Coefficient::one(), self), (Coefficient::from_int(-1), other)])
    }

    /// A copy that forgets the infinitesimal flag, forcing generic evaluation.
    pub fn opaque(&self) -> Self {
        Self::build(
            &self.0.alphabet,
            self.0.truncation,
            false,
            Rule::Combination(vec![(Coefficient::one(), self.clone())]),
        )
    }

    /// Basis bar words of degree `≤ max` on which the two forms differ.
    pub fn differences(&self, other: &Functional<A>, max_degree: usize) -> Result<Vec<BarWord<A>>> {
        self.compatible(other)?;
        let mut out = Vec::new();
        for b in BarWord::basis_up_to(&self.0.alphabet, max_degree, true)? {
            if self.eval(&b)? != other.eval(&b)? {
                out.push(b);
            }
        }
        Ok(out)
    }
}

/// `Σ f(l)·g(r)` over the terms of `Δ_v(b)`.
fn pair_sum<A: Atom>(f: &Functional<A>, g: &Functional<A>, b: &BarWord<A>, v: Variant) -> Result<Coefficient> {
    let mut acc = Coefficient::zero();
    let mut err = None;
    let mut visit = |fl: Result<Coefficient>, r: BarWord<A>| {
        if err.is_some() {
            return;
        }
        let res = fl.and_then(|x| if x.is_zero() { Ok(x) } else { Ok(&x * &g.eval(&r)?) });
        match res {
            Ok(t) => acc += &t,
            Err(e) => err = Some(e),
        }
    };
    if f.0.infinitesimal {
        for_each_single_left(b, v, |l, r| visit(f.eval_atom(l), r));
    } else {
        for_each_term(b, v, |l, r| visit(f.eval(&l), r));
    }
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// A unital multiplicative form.
#[derive(Clone, Debug)]
pub struct Character<A: Atom>(Functional<A>);

/// A form vanishing on the unit and on every bar word with two or more parts.
#[derive(Clone, Debug)]
pub struct InfinitesimalCharacter<A: Atom>(Functional<A>);

impl<A: Atom> Character<A> {
    /// Validates exhaustively up to the truncation.
    pub fn new(f: Functional<A>) -> Result<Self> {
        let report = check_character(&f, f.truncation())?;
        if !report.is_character() {
            return Err(Error::NotCharacter(report.describe(f.alphabet())));
        }
        Ok(Character(f))
    }

    /// Multiplicative by construction.
    pub fn multiplicative<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&A) -> Coefficient + Send + Sync + 'static,
    {
        Character(Functional::multiplicative(alphabet, truncation, f))
    }

    pub fn from_table(alphabet: &Alphabet, truncation: usize, table: HashMap<A, Coefficient>) -> Result<Self> {
        Functional::multiplicative_from_table(alphabet, truncation, table).map(Character)
    }

    /// Multiplicative extension of a fallible atom rule.
    pub fn multiplicative_try<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&A) -> Result<Coefficient> + Send + Sync + 'static,
    {
        Character(Functional::multiplicative_try(alphabet, truncation, f))
    }

    pub fn functional(&self) -> &Functional<A> {
        &self.0
    }

    pub fn into_functional(self) -> Functional<A> {
        self.0
    }
}

impl<A: Atom> InfinitesimalCharacter<A> {
    pub fn new(f: Functional<A>) -> Result<Self> {
        if f.is_infinitesimal_by_construction() {
            return Ok(InfinitesimalCharacter(f));
        }
        let report = check_infinitesimal(&f, f.truncation())?;
        if !report.is_infinitesimal() {
            return Err(Error::NotInfinitesimal(report.describe(f.alphabet())));
        }
        Ok(InfinitesimalCharacter(f))
    }

    pub fn from_fn<F>(alphabet: &Alphabet, truncation: usize, f: F) -> Self
    where
        F: Fn(&A) -> Coefficient + Send + Sync + 'static,
    {
        InfinitesimalCharacter(Functional::infinitesimal(alphabet, truncation, f))
    }

    pub fn from_table(alphabet: &Alphabet, truncation: usize, table: HashMap<A, Coefficient>) -> Self {
        InfinitesimalCharacter(Functional::infinitesimal_from_table(alphabet, truncation, table))
    }

    pub fn functional(&self) -> &Functional<A> {
        &self.0
    }

    pub fn into_functional(self) -> Functional<A> {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterReport<A: Atom> {
    pub checked_degree: usize,
    pub unit_value: Coefficient,
    /// Pairs `(a, b)` of non-unit basis bar words with `Φ(a|b) ≠ Φ(a)Φ(b)`.
    pub violations: Vec<(BarWord<A>, BarWord<A>)>,
}

impl<A: Atom> CharacterReport<A> {
    pub fn is_character(&self) -> bool {
        self.unit_value.is_one() && self.violations.is_empty()
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let mut parts = Vec::new();
        if !self.unit_value.is_one() {
            parts.push(format!("value {} on the unit", self.unit_value));
        }
        for (a, b) in self.violations.iter().take(5) {
            parts.push(format!("not multiplicative on ({}, {})", a.render(alphabet), b.render(alphabet)));
        }
        if self.violations.len() > 5 {
            parts.push(format!("{} more pairs", self.violations.len() - 5));
        }
        parts.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalReport<A: Atom> {
    pub checked_degree: usize,
    pub unit_value: Coefficient,
    /// Bar words with at least two parts where the form is non-zero.
    pub violations: Vec<BarWord<A>>,
}

impl<A: Atom> InfinitesimalReport<A> {
    pub fn is_infinitesimal(&self) -> bool {
        self.unit_value.is_zero() && self.violations.is_empty()
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let mut parts = Vec::new();
        if !self.unit_value.is_zero() {
            parts.push(format!("value {} on the unit", self.unit_value));
        }
        for b in self.violations.iter().take(5) {
            parts.push(format!("non-zero on {}", b.render(alphabet)));
        }
        parts.join("; ")
    }
}

/// Exhaustive multiplicativity check on every split of every basis bar word
/// of degree `≤ max_degree`.
pub fn check_character<A: Atom>(f: &Functional<A>, max_degree: usize) -> Result<CharacterReport<A>> {
    let max_degree = max_degree.min(f.truncation());
    let unit_value = f.eval(&BarWord::unit())?;
    let mut violations = Vec::new();
    for b in BarWord::basis_up_to(f.alphabet(), max_degree, false)? {
        let whole = f.eval(&b)?;
        for k in 1..b.len() {
            let (l, r) = (BarWord::new(b.parts()[..k].to_vec()), BarWord::new(b.parts()[k..].to_vec()));
            if whole != &f.eval(&l)? * &f.eval(&r)? {
                violations.push((l, r));
            }
        }
    }
    Ok(CharacterReport { checked_degree: max_degree, unit_value, violations })
}

pub fn check_infinitesimal<A: Atom>(f: &Functional<A>, max_degree: usize) -> Result<InfinitesimalReport<A>> {
    let max_degree = max_degree.min(f.truncation());
    let unit_value = f.eval(&BarWord::unit())?;
    let mut violations = Vec::new();
    for b in BarWord::basis_up_to(f.alphabet(), max_degree, false)? {
        if b.len() >= 2 && !f.eval(&b)?.is_zero() {
            violations.push(b);
        }
    }
    Ok(InfinitesimalReport { checked_degree: max_degree, unit_value, violations })
}

/// Largest degree whose cumulative basis stays within the verification budget.
fn affordable_degree<A: Atom>(alphabet: &Alphabet, truncation: usize) -> Result<usize> {
    let mut total = 0usize;
    let mut atoms = vec![0usize];
    let mut bars = vec![1usize];
    for d in 1..=truncation {
        atoms.push(A::basis_len(alphabet, d));
        let count: usize = (1..=d).map(|k| atoms[k].saturating_mul(bars[d - k])).fold(0, usize::saturating_add);
        bars.push(count);
        total = total.saturating_add(count);
        if total > VERIFY_BUDGET {
            return Ok(d - 1);
        }
    }
    Ok(truncation)
}

/// The unique `Φ` with `Φ = e + κ≺Φ`, computed degree by degree. The result
/// is checked to be multiplicative on the whole basis as far as the
/// verification budget allows.
pub fn solve_left_fixed_point<A: Atom>(kappa: &InfinitesimalCharacter<A>) -> Result<Character<A>> {
    let k = kappa.functional();
    let phi = Functional::build(k.alphabet(), k.truncation(), false, Rule::FixedPoint(k.clone()));
    let d = affordable_degree::<A>(k.alphabet(), k.truncation())?;
    let report = check_character(&phi, d)?;
    if !report.is_character() {
        return Err(Error::Inconsistent(format!("fixed point is not a character: {}", report.describe(k.alphabet()))));
    }
    Ok(Character(phi))
}

/// `exp^≺(κ) = Σ_{n≥0} κ^{≺n}`, truncated where `κ^{≺n}` vanishes.
pub fn exp_prec<A: Atom>(kappa: &InfinitesimalCharacter<A>) -> Result<Character<A>> {
    let k = kappa.functional();
    let e = Functional::augmentation(k.alphabet(), k.truncation());
    let mut power = e.clone();
    let mut terms = vec![e];
    for _ in 0..k.truncation() {
        power = k.prec(&power)?;
        terms.push(power.clone());
    }
    let refs: Vec<(Coefficient, &Functional<A>)> = terms.iter().map(|t| (Coefficient::one(), t)).collect();
    Ok(Character(Functional::linear_combination(&refs)?))
}

/// The infinitesimal `κ` with `Φ = e + κ≺Φ`, evaluated lazily from the atom
/// recursion `κ(x) = Φ(x) − Σ_{Δ_≺(x)} κ(l)Φ(r)` without any verification.
pub fn generator_of<A: Atom>(phi: &Character<A>) -> InfinitesimalCharacter<A> {
    let p = phi.functional();
    InfinitesimalCharacter(Functional::build(p.alphabet(), p.truncation(), true, Rule::Generator(p.clone())))
}

/// Inverse of the half-shuffle exponential. The identity `Φ = e + κ≺Φ` is
/// then verified on every basis bar word as far as the verification budget
/// allows.
pub fn extract_generator<A: Atom>(phi: &Character<A>) -> Result<InfinitesimalCharacter<A>> {
    let kappa = generator_of(phi);
    let p = phi.functional();
    let e = Functional::augmentation(p.alphabet(), p.truncation());
    let rebuilt = e.add(&kappa.functional().prec(p)?)?;
    let d = affordable_degree::<A>(p.alphabet(), p.truncation())?;
    let bad = rebuilt.differences(p, d)?;
    if let Some(b) = bad.first() {
        return Err(Error::NotCharacter(format!(
            "no infinitesimal generator reproduces the value on {}",
            b.render(p.alphabet())
        )));
    }
    Ok(kappa)
}

/// `Sp^*(Ψ) = Ψ∘Sp`.
pub fn pullback_sp(psi: &Functional<DecoratedNC>) -> Functional<Word> {
    let p = psi.clone();
    let rule: BarRule<Word> = Arc::new(move |b: &BarWord<Word>| p.eval_element(&sp(b)?));
    Functional::build(psi.alphabet(), psi.truncation(), psi.is_infinitesimal_by_construction(), Rule::General(rule))
}

/// `sd(κ)(L⊗w) = κ(w)` when `L` has a single block, zero otherwise.
pub fn standard_section(kappa: &Functional<Word>) -> InfinitesimalCharacter<DecoratedNC> {
    let k = kappa.clone();
    let rule: AtomRule<DecoratedNC> =
        Arc::new(
            move |x: &DecoratedNC| {
                if x.shape().block_count() == 1 {
                    k.eval_atom(x.decoration())
                } else {
                    Ok(Coefficient::zero())
                }
            },
        );
    InfinitesimalCharacter(Functional::build(kappa.alphabet(), kappa.truncation(), true, Rule::Infinitesimal(rule)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::NonCrossingPartition;

    fn one_letter() -> Alphabet {
        Alphabet::single("a")
    }

    fn power(n: usize) -> BarWord<Word> {
        BarWord::atom(Word::power(crate::word::Letter(0), n).unwrap())
    }

    fn symbolic_kappa(n: usize) -> InfinitesimalCharacter<Word> {
        InfinitesimalCharacter::from_fn(&one_letter(), n, |w: &Word| Coefficient::var(format!("k{}", w.len())))
    }

    #[test]
    fn convolution_of_a_letter_form() {
        let a = Alphabet::generic(2);
        let f = Functional::infinitesimal(&a, 4, |w: &Word| {
            if w.len() == 1 && w.letters()[0].0 == 0 {
                Coefficient::one()
            } else {
                Coefficient::zero()
            }
        });
        let ff = f.convolve(&f).unwrap();
        let w = BarWord::parse("a1.a1", &a).unwrap();
        assert_eq!(ff.eval(&w).unwrap(), Coefficient::from_int(2));
    }

    #[test]
    fn unit_laws() {
        let a = Alphabet::generic(2);
        let e = Functional::<Word>::augmentation(&a, 4);
        let f = Functional::random(&a, 4, 7, RandomKind::Augmented);
        let zero = Functional::zero(&a, 4);
        assert!(f.prec(&e).unwrap().differences(&f, 4).unwrap().is_empty());
        assert!(e.succ(&f).unwrap().differences(&f, 4).unwrap().is_empty());
        assert!(e.prec(&f).unwrap().differences(&zero, 4).unwrap().is_empty());
        assert!(f.succ(&e).unwrap().differences(&zero, 4).unwrap().is_empty());
        let g = Functional::random(&a, 4, 8, RandomKind::General);
        assert!(e.convolve(&g).unwrap().differences(&g, 4).unwrap().is_empty());
        assert!(g.convolve(&e).unwrap().differences(&g, 4).unwrap().is_empty());
    }

    #[test]
    fn half_products_sum_to_convolution() {
        let a = Alphabet::generic(2);
        let f = Functional::<Word>::random(&a, 4, 1, RandomKind::General);
        let g = Functional::random(&a, 4, 2, RandomKind::General);
        let s = f.prec(&g).unwrap().add(&f.succ(&g).unwrap()).unwrap();
        assert!(s.differences(&f.convolve(&g).unwrap(), 4).unwrap().is_empty());
    }

    #[test]
    fn beyond_truncation_is_an_error() {
        let f = Functional::<Word>::augmentation(&one_letter(), 3);
        assert_eq!(f.eval(&power(4)), Err(Error::BeyondTruncation { degree: 4, truncation: 3 }));
        let g = Functional::<Word>::augmentation(&one_letter(), 4);
        assert!(matches!(f.convolve(&g), Err(Error::TruncationMismatch(3, 4))));
    }

    #[test]
    fn free_moments_from_fixed_point() {
        let phi = solve_left_fixed_point(&symbolic_kappa(4)).unwrap();
        let f = phi.functional();
        assert_eq!(f.eval(&power(2)).unwrap().to_string(), "k1^2 + k2");
        assert_eq!(f.eval(&power(3)).unwrap().to_string(), "k1^3 + 3*k1*k2 + k3");
        assert_eq!(f.eval(&power(4)).unwrap().to_string(), "k1^4 + 6*k1^2*k2 + 2*k2^2 + 4*k1*k3 + k4");
        let ex = exp_prec(&symbolic_kappa(4)).unwrap();
        assert_eq!(ex.functional().eval(&power(3)).unwrap().to_string(), "k1^3 + 3*k1*k2 + k3");
    }

    #[test]
    fn zero_generator_gives_augmentation() {
        let z = InfinitesimalCharacter::new(Functional::<Word>::zero(&one_letter(), 5)).unwrap();
        let e = Functional::augmentation(&one_letter(), 5);
        assert!(solve_left_fixed_point(&z).unwrap().functional().differences(&e, 5).unwrap().is_empty());
        assert!(exp_prec(&z).unwrap().functional().differences(&e, 5).unwrap().is_empty());
    }

    #[test]
    fn fast_path_matches_generic_path() {
        let a = Alphabet::generic(2);
        let k = Functional::<Word>::random(&a, 5, 3, RandomKind::Infinitesimal);
        let g = Functional::random(&a, 5, 4, RandomKind::General);
        for (x, y) in
            [(k.prec(&g).unwrap(), k.opaque().prec(&g).unwrap()), (k.succ(&g).unwrap(), k.opaque().succ(&g).unwrap())]
        {
            assert!(x.differences(&y, 5).unwrap().is_empty());
        }
    }

    #[test]
    fn generator_round_trip() {
        let a = Alphabet::generic(2);
        let k = InfinitesimalCharacter::new(Functional::<Word>::random(&a, 5, 11, RandomKind::Infinitesimal)).unwrap();
        let phi = solve_left_fixed_point(&k).unwrap();
        let back = extract_generator(&phi).unwrap();
        assert!(back.functional().differences(k.functional(), 5).unwrap().is_empty());
    }

    #[test]
    fn non_characters_are_reported() {
        let a = one_letter();
        let f = Functional::<Word>::from_fn(&a, 3, |b| Ok(Coefficient::from_int(if b.len() == 2 { 5 } else { 1 })));
        let r = check_character(&f, 3).unwrap();
        assert!(!r.is_character());
        let expect = (power(1), power(1));
        assert!(r.violations.contains(&expect));
        assert!(Character::new(f).is_err());
        let e = Functional::<Word>::augmentation(&a, 3);
        assert!(check_character(&e, 3).unwrap().is_character());
        assert!(!check_infinitesimal(&e, 3).unwrap().is_infinitesimal());
    }

    #[test]
    fn standard_section_values() {
        let a = Alphabet::generic(3);
        let k = Functional::<Word>::random(&a, 4, 5, RandomKind::Infinitesimal);
        let sd = standard_section(&k);
        let w = a.parse_word("a1.a2.a3").unwrap();
        let x = BarWord::<DecoratedNC>::parse("{1,2,3}:a1.a2.a3", &a).unwrap();
        assert_eq!(sd.functional().eval(&x).unwrap(), k.eval_atom(&w).unwrap());
        let y = BarWord::<DecoratedNC>::parse("{1,3}{2}:a1.a2.a3", &a).unwrap();
        assert!(sd.functional().eval(&y).unwrap().is_zero());
        assert!(check_infinitesimal(sd.functional(), 4).unwrap().is_infinitesimal());

        let psi = solve_left_fixed_point(&sd).unwrap();
        let expect = &k.eval_atom(&a.parse_word("a1.a3").unwrap()).unwrap()
            * &k.eval_atom(&a.parse_word("a2").unwrap()).unwrap();
        assert_eq!(psi.functional().eval(&y).unwrap(), expect);
    }

    #[test]
    fn pullback_of_augmentation() {
        let a = Alphabet::generic(2);
        let e = Functional::<DecoratedNC>::augmentation(&a, 4);
        let pe = pullback_sp(&e);
        assert!(pe.differences(&Functional::augmentation(&a, 4), 4).unwrap().is_empty());
    }

    #[test]
    fn undecorated_fixed_point_is_multiplicative() {
        let a = one_letter();
        let k = InfinitesimalCharacter::new(Functional::<NonCrossingPartition>::random(
            &a,
            5,
            9,
            RandomKind::Infinitesimal,
        ))
        .unwrap();
        let phi = solve_left_fixed_point(&k).unwrap();
        assert!(check_character(phi.functional(), 5).unwrap().is_character());
    }
}
