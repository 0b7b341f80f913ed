//! Moment–cumulant transforms, classical and free, univariate and
//! multivariate. Every transform runs at least two independent routes and
//! fails with [`Error::Inconsistent`] if they disagree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coeff::Coefficient;
use crate::decorated::DecoratedNC;
use crate::error::{Error, Result};
use crate::functional::{
    generator_of, pullback_sp, solve_left_fixed_point, standard_section, Character, Functional, InfinitesimalCharacter,
};
use crate::hopf::{BarWord, Render};
use crate::moebius::{moebius_to_top, Lattice};
use crate::partition::{enumerate_set_partitions, nc_partitions_cached, Limits, NonCrossingPartition, SetPartition};
use crate::series::{solve_functional_equation, Series};
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Classical,
    Free,
}

impl Flavor {
    pub fn variable_prefix(self) -> &'static str {
        match self {
            Flavor::Classical => "c",
            Flavor::Free => "k",
        }
    }
}

/// `m_0 = 1, m_1, …, m_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence(Vec<Coefficient>);

impl MomentSequence {
    /// Values starting at `m_0`, which must be 1.
    pub fn new(values: Vec<Coefficient>) -> Result<Self> {
        match values.first() {
            Some(m0) if m0.is_one() => Ok(MomentSequence(values)),
            Some(m0) => Err(Error::InvalidSequence(format!("m_0 must be 1, got {m0}"))),
            None => Err(Error::InvalidSequence("empty moment sequence".into())),
        }
    }

    /// Values starting at `m_1`.
    pub fn from_positive(values: Vec<Coefficient>) -> Self {
        let mut v = vec![Coefficient::one()];
        v.extend(values);
        MomentSequence(v)
    }

    /// `m1, …, mN` as indeterminates.
    pub fn symbolic(order: usize) -> Self {
        MomentSequence::from_positive((1..=order).map(|i| Coefficient::var(format!("m{i}"))).collect())
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, n: usize) -> &Coefficient {
        &self.0[n]
    }

    /// Including `m_0`.
    pub fn values(&self) -> &[Coefficient] {
        &self.0
    }

    pub fn positive(&self) -> &[Coefficient] {
        &self.0[1..]
    }
}

/// `c_1, …, c_N` or `k_1, …, k_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantSequence {
    flavor: Flavor,
    values: Vec<Coefficient>,
}

impl CumulantSequence {
    pub fn new(flavor: Flavor, values: Vec<Coefficient>) -> Self {
        CumulantSequence { flavor, values }
    }

    /// `c1, …` or `k1, …` as indeterminates.
    pub fn symbolic(flavor: Flavor, order: usize) -> Self {
        let p = flavor.variable_prefix();
        CumulantSequence::new(flavor, (1..=order).map(|i| Coefficient::var(format!("{p}{i}"))).collect())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// 1-based.
    pub fn get(&self, n: usize) -> &Coefficient {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[Coefficient] {
        &self.values
    }

    /// Values indexed by block size, with a zero at index 0.
    fn by_size(&self) -> Vec<Coefficient> {
        let mut v = vec![Coefficient::zero()];
        v.extend(self.values.iter().cloned());
        v
    }

    fn expect(&self, flavor: Flavor) -> Result<()> {
        if self.flavor != flavor {
            return Err(Error::InvalidSequence(format!("expected {flavor:?} cumulants, got {:?}", self.flavor)));
        }
        Ok(())
    }
}

/// `Π_i v_{|L_i|}`.
fn block_product(p: &SetPartition, by_size: &[Coefficient]) -> Coefficient {
    let mut acc = Coefficient::one();
    for b in p.blocks() {
        acc *= &by_size[b.len()];
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn binomial(n: usize, k: usize) -> Coefficient {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Coefficient::Rational(BigRational::from_integer(r))
}

fn agree(what: &str, routes: &[(&str, &[Coefficient])]) -> Result<()> {
    let (name0, base) = routes[0];
    for (name, vals) in &routes[1..] {
        if let Some(i) = (0..base.len()).find(|&i| base[i] != vals[i]) {
            return Err(Error::Inconsistent(format!(
                "{what}: {name0} gives {} but {name} gives {} at n = {}",
                base[i],
                vals[i],
                i + 1
            )));
        }
    }
    Ok(())
}

/// `B_{n+1} = Σ_k C(n,k) B_{n−k} c_{k+1}`.
pub fn classical_moments_bell(c: &CumulantSequence) -> Vec<Coefficient> {
    let mut b = vec![Coefficient::one()];
    for n in 0..c.order() {
        let mut next = Coefficient::zero();
        for k in 0..=n {
            next += &(&(&binomial(n, k) * &b[n - k]) * c.get(k + 1));
        }
        b.push(next);
    }
    b.split_off(1)
}

/// `m_n = Σ_{L∈P_n} Π_i c_{|L_i|}`.
pub fn classical_moments_partition_sum(c: &CumulantSequence) -> Result<Vec<Coefficient>> {
    let by_size = c.by_size();
    (1..=c.order())
        .map(|n| Ok(enumerate_set_partitions(n, &Limits::default())?.iter().map(|p| block_product(p, &by_size)).sum()))
        .collect()
}

pub fn classical_moments_from_cumulants(c: &CumulantSequence) -> Result<MomentSequence> {
    c.expect(Flavor::Classical)?;
    let bell = classical_moments_bell(c);
    let sum = classical_moments_partition_sum(c)?;
    agree("classical moments", &[("Bell recursion", &bell), ("partition sum", &sum)])?;
    Ok(MomentSequence::from_positive(bell))
}

/// `c_n = Σ_{L∈P_n} μ_P(L, 1̂_n) Π_i m_{|L_i|}`.
pub fn classical_cumulants_moebius(m: &MomentSequence) -> Result<Vec<Coefficient>> {
    mobius_sum(Lattice::SetPartitions, m)
}

/// The Bell recursion solved for its last cumulant.
pub fn classical_cumulants_recursive(m: &MomentSequence) -> Vec<Coefficient> {
    let mut c: Vec<Coefficient> = Vec::new();
    for n in 0..m.order() {
        let mut v = m.get(n + 1).clone();
        for k in 0..n {
            v -= &(&(&binomial(n, k) * m.get(n - k)) * &c[k]);
        }
        c.push(v);
    }
    c
}

pub fn classical_cumulants_from_moments(m: &MomentSequence) -> Result<CumulantSequence> {
    let mu = classical_cumulants_moebius(m)?;
    let rec = classical_cumulants_recursive(m);
    agree("classical cumulants", &[("Möbius inversion", &mu), ("inverse recursion", &rec)])?;
    Ok(CumulantSequence::new(Flavor::Classical, mu))
}

fn mobius_sum(lattice: Lattice, m: &MomentSequence) -> Result<Vec<Coefficient>> {
    let by_size = m.values();
    (1..=m.order())
        .map(|n| {
            let table = moebius_to_top(lattice, n)?;
            let mut acc = Coefficient::zero();
            for (p, mu) in table.iter() {
                acc += &(&Coefficient::from_int(*mu) * &block_product(p, by_size));
            }
            Ok(acc)
        })
        .collect()
}

/// `m_n = Σ_{L∈NC_n} Π_i k_{|L_i|}`.
pub fn free_moments_nc_sum(k: &CumulantSequence) -> Result<Vec<Coefficient>> {
    let by_size = k.by_size();
    (1..=k.order()).map(|n| Ok(nc_partitions_cached(n)?.iter().map(|p| block_product(p, &by_size)).sum())).collect()
}

/// `m_n = Σ_s k_s Σ_{i_1+…+i_s = n−s} m_{i_1}⋯m_{i_s}`.
pub fn free_moments_recursion(k: &CumulantSequence) -> Vec<Coefficient> {
    let n_max = k.order();
    let mut m = vec![Coefficient::one()];
    for n in 1..=n_max {
        // conv[j][r] = Σ over (i_1..i_j) summing to r of Π m_i
        let mut total = Coefficient::zero();
        let mut conv = vec![Coefficient::one()];
        conv.extend((1..n).map(|_| Coefficient::zero()));
        for s in 1..=n {
            let mut next = vec![Coefficient::zero(); n];
            for (r, c) in conv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for i in 0..n - r {
                    next[r + i] += &(c * &m[i]);
                }
            }
            conv = next;
            total += &(k.get(s) * &conv[n - s]);
        }
        m.push(total);
    }
    m.split_off(1)
}

fn single_letter() -> Alphabet {
    Alphabet::single("a")
}

fn power(n: usize) -> Word {
    Word::power(Letter(0), n).expect("positive length")
}

/// `m_n = Φ(a^{⊗n})` with `Φ = e + κ≺Φ` and `κ(a^{⊗n}) = k_n` on the
/// one-letter double tensor algebra.
pub fn free_moments_fixed_point(k: &CumulantSequence) -> Result<Vec<Coefficient>> {
    let n = k.order();
    let by_size = k.by_size();
    let kappa = InfinitesimalCharacter::from_fn(&single_letter(), n, move |w: &Word| by_size[w.len()].clone());
    let phi = solve_left_fixed_point(&kappa)?;
    (1..=n).map(|i| phi.functional().eval(&BarWord::atom(power(i)))).collect()
}

/// Coefficients of `F` solving `F(t) = K(tF(t))`.
pub fn free_moments_series(k: &CumulantSequence) -> Result<Vec<Coefficient>> {
    let mut coeffs = vec![Coefficient::one()];
    coeffs.extend(k.values().iter().cloned());
    let f = solve_functional_equation(&Series::new(coeffs)?)?;
    Ok(f.coeffs()[1..].to_vec())
}

pub fn free_moments_from_cumulants(k: &CumulantSequence) -> Result<MomentSequence> {
    k.expect(Flavor::Free)?;
    let nc = free_moments_nc_sum(k)?;
    let rec = free_moments_recursion(k);
    let fp = free_moments_fixed_point(k)?;
    let ser = free_moments_series(k)?;
    agree(
        "free moments",
        &[("NC zeta sum", &nc), ("moment recursion", &rec), ("half-shuffle fixed point", &fp), ("F = K(tF)", &ser)],
    )?;
    Ok(MomentSequence::from_positive(nc))
}

/// `k_n = Σ_{L∈NC_n} μ_NC(L, 1̂_n) Π_i m_{|L_i|}`.
pub fn free_cumulants_moebius(m: &MomentSequence) -> Result<Vec<Coefficient>> {
    mobius_sum(Lattice::NonCrossing, m)
}

/// `k_n = κ(a^{⊗n})` for the infinitesimal `κ` generating the character with
/// `Φ(a^{⊗n}) = m_n`.
pub fn free_cumulants_generator(m: &MomentSequence) -> Result<Vec<Coefficient>> {
    let n = m.order();
    let vals = m.values().to_vec();
    let phi = Character::multiplicative(&single_letter(), n, move |w: &Word| vals[w.len()].clone());
    let kappa = crate::functional::extract_generator(&phi)?;
    (1..=n).map(|i| kappa.functional().eval(&BarWord::atom(power(i)))).collect()
}

pub fn free_cumulants_from_moments(m: &MomentSequence) -> Result<CumulantSequence> {
    let mu = free_cumulants_moebius(m)?;
    let gen = free_cumulants_generator(m)?;
    agree("free cumulants", &[("Möbius inversion", &mu), ("half-shuffle logarithm", &gen)])?;
    Ok(CumulantSequence::new(Flavor::Free, mu))
}

/// Values on every word of length `1..=N` over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTable {
    alphabet: Alphabet,
    truncation: usize,
    values: BTreeMap<Word, Coefficient>,
}

/// Multivariate moments `φ(a_1⋯a_n)`.
pub type MultiMomentMap = WordTable;
/// Multivariate free cumulants `R(a_1, …, a_n)`.
pub type MultiCumulantMap = WordTable;

#[derive(Serialize, Deserialize)]
struct RawTable {
    alphabet: Vec<String>,
    truncation: usize,
    values: BTreeMap<String, Coefficient>,
}

impl WordTable {
    /// The table must be total on words of length `1..=truncation`.
    pub fn new(alphabet: Alphabet, truncation: usize, values: BTreeMap<Word, Coefficient>) -> Result<Self> {
        if let Some(w) = values.keys().find(|w| w.len() > truncation || !alphabet.contains_word(w)) {
            return Err(Error::InvalidSequence(format!("unexpected entry of length {} above the truncation", w.len())));
        }
        for d in 1..=truncation {
            for w in alphabet.words(d) {
                if !values.contains_key(&w) {
                    return Err(Error::MissingValue(alphabet.render_word(&w)));
                }
            }
        }
        Ok(WordTable { alphabet, truncation, values })
    }

    pub fn from_fn(alphabet: &Alphabet, truncation: usize, f: impl Fn(&Word) -> Coefficient) -> Self {
        let values =
            (1..=truncation).flat_map(|d| alphabet.words(d)).map(|w| (f(&w), w)).map(|(c, w)| (w, c)).collect();
        WordTable { alphabet: alphabet.clone(), truncation, values }
    }

    /// Indeterminates named `{prefix}[word]`.
    pub fn symbolic(alphabet: &Alphabet, truncation: usize, prefix: &str) -> Self {
        Self::from_fn(alphabet, truncation, |w| Coefficient::var(format!("{prefix}[{}]", alphabet.render_word(w))))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn get(&self, w: &Word) -> Result<&Coefficient> {
        self.values.get(w).ok_or_else(|| Error::MissingValue(self.alphabet.render_word(w)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Coefficient)> {
        self.values.iter()
    }

    /// Words ordered by length, then lexicographically.
    pub fn words_by_length(&self) -> Vec<&Word> {
        let mut w: Vec<&Word> = self.values.keys().collect();
        w.sort_by_key(|w| w.len());
        w
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let alphabet = Alphabet::new(raw.alphabet)?;
        let mut values = BTreeMap::new();
        for (k, v) in raw.values {
            if k.is_empty() || k == "1" {
                if !v.is_one() {
                    return Err(Error::InvalidSequence(format!("value at the empty word must be 1, got {v}")));
                }
                continue;
            }
            values.insert(alphabet.parse_word(&k)?, v);
        }
        WordTable::new(alphabet, raw.truncation, values)
    }

    pub fn to_json(&self) -> String {
        let raw = RawTable {
            alphabet: self.alphabet.names().to_vec(),
            truncation: self.truncation,
            values: self.values.iter().map(|(w, c)| (self.alphabet.render_word(w), c.clone())).collect(),
        };
        serde_json::to_string(&raw).expect("tables serialise")
    }
}

/// `κ^L(w) = Π_i κ(w_{L_i})`.
pub fn kappa_powers(l: &NonCrossingPartition, w: &Word, kappa: &Functional<Word>) -> Result<Coefficient> {
    if l.size() != w.len() {
        return Err(Error::CarrierMismatch(format!("partition of {} points, word of length {}", l.size(), w.len())));
    }
    let st = l.standardize();
    let mut acc = Coefficient::one();
    for b in st.blocks() {
        let sub = w.restrict(&b.iter().map(|x| x - 1).collect::<Vec<_>>()).expect("non-empty block");
        acc *= &kappa.eval_atom(&sub)?;
    }
    Ok(acc)
}

/// Every restriction of `w` to a non-empty set of positions, shortest first.
pub fn subwords(w: &Word) -> Vec<Word> {
    let n = w.len();
    let mut out: Vec<Word> = (1u32..(1 << n))
        .map(|mask| w.restrict(&(0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>()).expect("non-empty"))
        .collect();
    out.sort_by_key(|w| w.len());
    out.dedup();
    out
}

/// Solves `φ(w) = Σ_{L∈NC_n} R^L(w)` for `R` on a set of words closed under
/// restriction, two ways: the triangular recursion and the infinitesimal
/// generator of the multiplicative extension of `φ`.
pub fn generalized_cumulants_on(
    alphabet: &Alphabet,
    truncation: usize,
    domain: &[Word],
    phi: Arc<HashMap<Word, Coefficient>>,
) -> Result<BTreeMap<Word, Coefficient>> {
    let mut order: Vec<&Word> = domain.iter().collect();
    order.sort_by_key(|w| w.len());
    let lookup = |table: &BTreeMap<Word, Coefficient>, w: &Word| -> Result<Coefficient> {
        table.get(w).cloned().ok_or_else(|| Error::MissingValue(alphabet.render_word(w)))
    };
    let mut direct: BTreeMap<Word, Coefficient> = BTreeMap::new();
    for w in order {
        let n = w.len();
        let mut v = phi.get(w).cloned().ok_or_else(|| Error::MissingValue(alphabet.render_word(w)))?;
        for l in nc_partitions_cached(n)?.iter().filter(|l| l.block_count() > 1) {
            let mut prod = Coefficient::one();
            for b in l.blocks() {
                let sub = w.restrict(&b.iter().map(|x| x - 1).collect::<Vec<_>>()).expect("non-empty block");
                prod *= &lookup(&direct, &sub)?;
            }
            v -= &prod;
        }
        direct.insert(w.clone(), v);
    }

    let al = alphabet.clone();
    let table = phi.clone();
    let character = Character::multiplicative_try(alphabet, truncation, move |w: &Word| {
        table.get(w).cloned().ok_or_else(|| Error::MissingValue(al.render_word(w)))
    });
    let kappa = generator_of(&character);
    for (w, v) in &direct {
        let g = kappa.functional().eval_atom(w)?;
        if &g != v {
            return Err(Error::Inconsistent(format!(
                "generalized cumulant of {}: triangular solve gives {v}, half-shuffle logarithm gives {g}",
                alphabet.render_word(w)
            )));
        }
    }
    Ok(direct)
}

pub fn generalized_free_cumulants(phi: &MultiMomentMap) -> Result<MultiCumulantMap> {
    let domain: Vec<Word> = phi.values.keys().cloned().collect();
    let table: HashMap<Word, Coefficient> = phi.values.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    let values = generalized_cumulants_on(&phi.alphabet, phi.truncation, &domain, Arc::new(table))?;
    Ok(WordTable { alphabet: phi.alphabet.clone(), truncation: phi.truncation, values })
}

/// `φ(w) = Σ_{L∈NC_n} R^L(w)`, cross-checked against `Φ = exp^≺(R)`.
pub fn multi_moments_from_cumulants(r: &MultiCumulantMap) -> Result<MultiMomentMap> {
    let table: HashMap<Word, Coefficient> = r.values.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    let kappa = InfinitesimalCharacter::from_table(&r.alphabet, r.truncation, table);
    let mut values = BTreeMap::new();
    for w in r.values.keys() {
        let mut v = Coefficient::zero();
        for l in nc_partitions_cached(w.len())?.iter() {
            v += &kappa_powers(l, w, kappa.functional())?;
        }
        values.insert(w.clone(), v);
    }
    let phi = solve_left_fixed_point(&kappa)?;
    for (w, v) in &values {
        let g = phi.functional().eval_atom(w)?;
        if &g != v {
            return Err(Error::Inconsistent(format!(
                "multivariate moment of {}: NC sum gives {v}, half-shuffle exponential gives {g}",
                r.alphabet.render_word(w)
            )));
        }
    }
    Ok(WordTable { alphabet: r.alphabet.clone(), truncation: r.truncation, values })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyrellReport {
    /// Pairs `(L, w)` compared between `Ψ(L⊗w)` and `κ^L(w)`.
    pub checked: usize,
    pub failures: Vec<String>,
    /// Words on which `Σ_L κ^L = Sp^*(Ψ)` and the cumulant solve were compared.
    pub principal_checked: usize,
    pub principal_failures: Vec<String>,
}

impl KeyrellReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty() && self.principal_failures.is_empty()
    }
}

/// Solves `Ψ = e + sd(κ)≺Ψ` on decorated partitions and compares
/// `Ψ(L⊗a_1⋯a_m)` with `κ^L(a_1⋯a_m)` for every `L ∈ NC_m`, `m ≤ n`, on the
/// word of the first `m` letters. Then `φ = Sp^*(Ψ)` is fed to the
/// generalized cumulant solver, which must give back `κ`.
pub fn verify_keyrell(kappa: &Functional<Word>, n: usize) -> Result<KeyrellReport> {
    let alphabet = kappa.alphabet();
    if n > kappa.truncation() {
        return Err(Error::BeyondTruncation { degree: n, truncation: kappa.truncation() });
    }
    if alphabet.len() < n {
        return Err(Error::InvalidSequence(format!("need {n} distinct letters, the alphabet has {}", alphabet.len())));
    }
    let psi = solve_left_fixed_point(&standard_section(kappa))?;
    let mut report = KeyrellReport::default();
    for m in 1..=n {
        let w = Word::new((0..m as u16).map(Letter).collect())?;
        for l in nc_partitions_cached(m)?.iter() {
            let x = BarWord::atom(DecoratedNC::new(l.clone(), w.clone())?);
            let lhs = psi.functional().eval(&x)?;
            let rhs = kappa_powers(l, &w, kappa)?;
            report.checked += 1;
            if lhs != rhs {
                report.failures.push(format!("{}: Ψ gives {lhs}, κ^L gives {rhs}", x.render(alphabet)));
            }
        }
    }
    if n == 0 {
        return Ok(report);
    }
    let top = Word::new((0..n as u16).map(Letter).collect())?;
    let domain = subwords(&top);
    let pulled = pullback_sp(psi.functional());
    let mut phi = HashMap::new();
    for w in &domain {
        let v = pulled.eval(&BarWord::atom(w.clone()))?;
        let mut sum = Coefficient::zero();
        for l in nc_partitions_cached(w.len())?.iter() {
            sum += &kappa_powers(l, w, kappa)?;
        }
        if sum != v {
            report.principal_failures.push(format!("{}: Σ κ^L = {sum}, Sp^*(Ψ) = {v}", alphabet.render_word(w)));
        }
        phi.insert(w.clone(), v);
    }
    let r = generalized_cumulants_on(alphabet, kappa.truncation(), &domain, Arc::new(phi))?;
    for w in &domain {
        report.principal_checked += 1;
        let k = kappa.eval_atom(w)?;
        if r[w] != k {
            report.principal_failures.push(format!(
                "{}: cumulant solve gives {}, κ is {k}",
                alphabet.render_word(w),
                r[w]
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::RandomKind;

    fn ints(v: &[i64]) -> Vec<Coefficient> {
        v.iter().map(|&x| Coefficient::from_int(x)).collect()
    }

    #[test]
    fn bell_polynomials() {
        let m = classical_moments_from_cumulants(&CumulantSequence::symbolic(Flavor::Classical, 5)).unwrap();
        assert_eq!(m.get(4).to_string(), "c1^4 + 6*c1^2*c2 + 3*c2^2 + 4*c1*c3 + c4");
        assert_eq!(m.get(5).to_string(), "c1^5 + 10*c1^3*c2 + 15*c1*c2^2 + 10*c1^2*c3 + 10*c2*c3 + 5*c1*c4 + c5");
        let poisson =
            classical_moments_from_cumulants(&CumulantSequence::new(Flavor::Classical, ints(&[1, 0, 0, 0, 0])))
                .unwrap();
        assert_eq!(poisson.positive(), ints(&[1, 1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn classical_inverse() {
        let c = classical_cumulants_from_moments(&MomentSequence::symbolic(3)).unwrap();
        assert_eq!(c.get(2).to_string(), "-m1^2 + m2");
        let c = classical_cumulants_from_moments(&MomentSequence::from_positive(ints(&[1, 1, 1, 1, 1, 1]))).unwrap();
        assert_eq!(c.values(), ints(&[1, 0, 0, 0, 0, 0]).as_slice());
    }

    #[test]
    fn free_moments_symbolic() {
        let m = free_moments_from_cumulants(&CumulantSequence::symbolic(Flavor::Free, 4)).unwrap();
        assert_eq!(m.get(2).to_string(), "k1^2 + k2");
        assert_eq!(m.get(4).to_string(), "k1^4 + 6*k1^2*k2 + 2*k2^2 + 4*k1*k3 + k4");
    }

    #[test]
    fn semicircle() {
        let k = CumulantSequence::new(Flavor::Free, ints(&[0, 1, 0, 0, 0, 0, 0, 0]));
        let m = free_moments_from_cumulants(&k).unwrap();
        assert_eq!(m.positive(), ints(&[0, 1, 0, 2, 0, 5, 0, 14]).as_slice());
        let back = free_cumulants_from_moments(&m).unwrap();
        assert_eq!(back.values(), k.values());
    }

    #[test]
    fn free_inverse_symbolic() {
        let k = free_cumulants_from_moments(&MomentSequence::symbolic(3)).unwrap();
        assert_eq!(k.get(2).to_string(), "-m1^2 + m2");
    }

    #[test]
    fn flavor_is_checked() {
        let k = CumulantSequence::new(Flavor::Free, ints(&[1]));
        assert!(classical_moments_from_cumulants(&k).is_err());
        assert!(MomentSequence::new(ints(&[2, 1])).is_err());
    }

    #[test]
    fn generalized_cumulants_low_degree() {
        let a = Alphabet::generic(2);
        let phi = WordTable::symbolic(&a, 2, "m");
        let r = generalized_free_cumulants(&phi).unwrap();
        let w = a.parse_word("a1.a2").unwrap();
        assert_eq!(r.get(&w).unwrap().to_string(), "-m[a1]*m[a2] + m[a1.a2]");
        let w = a.parse_word("a2").unwrap();
        assert_eq!(r.get(&w).unwrap().to_string(), "m[a2]");
        let back = multi_moments_from_cumulants(&r).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn table_json_round_trip() {
        let a = Alphabet::parse_list("a,b").unwrap();
        let t = WordTable::from_fn(&a, 2, |w| Coefficient::from_ratio(w.len() as i64, 2));
        let s = t.to_json();
        assert!(s.contains(r#""a.b":"1""#), "{s}");
        assert_eq!(WordTable::from_json(&s).unwrap(), t);
        let missing = r#"{"alphabet":["a"],"truncation":2,"values":{"a":"1"}}"#;
        assert!(matches!(WordTable::from_json(missing), Err(Error::MissingValue(_))));
    }

    #[test]
    fn kappa_powers_examples() {
        let a = Alphabet::generic(3);
        let k = Functional::<Word>::random(&a, 3, 2, RandomKind::Infinitesimal);
        let w = a.parse_word("a1.a2.a3").unwrap();
        let l: NonCrossingPartition = "{1,3}{2}".parse().unwrap();
        let expect = &k.eval_atom(&a.parse_word("a1.a3").unwrap()).unwrap()
            * &k.eval_atom(&a.parse_word("a2").unwrap()).unwrap();
        assert_eq!(kappa_powers(&l, &w, &k).unwrap(), expect);
        assert_eq!(kappa_powers(&NonCrossingPartition::one_block(3), &w, &k).unwrap(), k.eval_atom(&w).unwrap());
        assert!(kappa_powers(&NonCrossingPartition::one_block(2), &w, &k).is_err());
    }

    #[test]
    fn keyrell_small() {
        let a = Alphabet::generic(3);
        let k = Functional::<Word>::random(&a, 3, 21, RandomKind::Infinitesimal);
        let r = verify_keyrell(&k, 2).unwrap();
        assert_eq!(r.checked, 3);
        assert!(r.is_ok(), "{r:?}");
        let r = verify_keyrell(&k, 3).unwrap();
        assert!(r.is_ok(), "{r:?}");
        let z = Functional::<Word>::zero(&a, 3);
        assert!(verify_keyrell(&z, 3).unwrap().is_ok());
    }
}
