//! Exact identity checks grouped into suites, each reporting every
//! counterexample it finds.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coeff::Coefficient;
use crate::cumulants::{
    classical_cumulants_from_moments, classical_moments_from_cumulants, free_cumulants_from_moments,
    free_moments_from_cumulants, verify_keyrell, CumulantSequence, Flavor, MomentSequence,
};
use crate::decorated::{sp, sp_tensor, DecoratedNC};
use crate::error::{Error, Result};
use crate::functional::{pullback_sp, random_rational, Functional, RandomKind};
use crate::hopf::{
    apply_left, apply_right, coproduct, coproduct_element, counit_left, counit_right, Atom, BarWord, Element, Render,
    Variant,
};
use crate::partition::NonCrossingPartition;
use crate::tree::{render_tree_tensor, tree_consistency};
use crate::word::{Alphabet, Word};

/// Witnesses kept per check; the failure count is always exact.
const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), checked: 0, failed: 0, witnesses: Vec::new() }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Coassoc,
    Unshuffle,
    Halfshuffle,
    SpMorphism,
    Keyrell,
    Roundtrip,
    TreeConsistency,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Coassoc,
        Suite::Unshuffle,
        Suite::Halfshuffle,
        Suite::SpMorphism,
        Suite::Keyrell,
        Suite::Roundtrip,
        Suite::TreeConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coassoc => "coassoc",
            Suite::Unshuffle => "unshuffle",
            Suite::Halfshuffle => "halfshuffle",
            Suite::SpMorphism => "sp-morphism",
            Suite::Keyrell => "keyrell",
            Suite::Roundtrip => "roundtrip",
            Suite::TreeConsistency => "tree-consistency",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("suite {}: {}\n", self.suite, if self.passed() { "pass" } else { "FAIL" });
        for c in &self.checks {
            if c.passed() {
                out.push_str(&format!("  pass  {} ({} checked)\n", c.name, c.checked));
            } else {
                out.push_str(&format!("  FAIL  {} ({} of {} failed)\n", c.name, c.failed, c.checked));
                for w in &c.witnesses {
                    out.push_str(&format!("        {w}\n"));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_degree: usize,
    /// Letters for word and decorated checks.
    pub alphabet: Alphabet,
    pub seed: u64,
    /// Random functional tuples or sequences per randomized check.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_degree: 4, alphabet: Alphabet::generic(2), seed: 1, samples: 10 }
    }
}

pub fn run_suite(suite: Suite, o: &VerifyOptions) -> Result<SuiteReport> {
    let d = o.max_degree;
    let a = &o.alphabet;
    let nc = Alphabet::default();
    let checks = match suite {
        Suite::Coassoc => vec![
            coassociativity::<Word>(a, d)?,
            coassociativity::<NonCrossingPartition>(&nc, d)?,
            coassociativity::<DecoratedNC>(a, d)?,
        ],
        Suite::Unshuffle => {
            let mut v = unshuffle_axioms::<Word>(a, d)?;
            v.extend(unshuffle_axioms::<NonCrossingPartition>(&nc, d)?);
            v.extend(unshuffle_axioms::<DecoratedNC>(a, d)?);
            v.extend(bialgebra_compatibility::<Word>(a, d)?);
            v.extend(bialgebra_compatibility::<NonCrossingPartition>(&nc, d)?);
            v
        }
        Suite::Halfshuffle => {
            let mut v = half_shuffle_axioms::<Word>(a, d, o.seed, o.samples)?;
            v.extend(half_shuffle_axioms::<NonCrossingPartition>(&nc, d, o.seed, o.samples)?);
            v
        }
        Suite::SpMorphism => {
            let mut v = sp_morphism(a, d)?;
            v.extend(sp_dual(a, d, o.seed, o.samples)?);
            v
        }
        Suite::Keyrell => vec![keyrell(d, o.seed)?],
        Suite::Roundtrip => roundtrips(d, o.seed, o.samples)?,
        Suite::TreeConsistency => vec![tree_check(d)?],
    };
    Ok(SuiteReport { suite, checks })
}

fn generators<A: Atom>(alphabet: &Alphabet, max: usize) -> Result<Vec<BarWord<A>>> {
    let mut out = Vec::new();
    for d in 1..=max {
        out.extend(A::basis(alphabet, d)?.into_iter().map(BarWord::atom));
    }
    Ok(out)
}

fn kind<A: Atom>() -> &'static str {
    let name = std::any::type_name::<A>();
    if name.ends_with("DecoratedNC") {
        "decorated partitions"
    } else if name.ends_with("NonCrossingPartition") {
        "partitions"
    } else {
        "words"
    }
}

/// `(Δ⊗id)Δ = (id⊗Δ)Δ` on every generator of degree `≤ max`.
pub fn coassociativity<A: Atom>(alphabet: &Alphabet, max: usize) -> Result<Check> {
    let mut c = Check::new(format!("coassociativity on {} of degree <= {max}", kind::<A>()));
    for x in generators::<A>(alphabet, max)? {
        let d = coproduct(&x, Variant::Full);
        let lhs = apply_left(&d, Variant::Full);
        let rhs = apply_right(&d, Variant::Full);
        c.record(lhs == rhs, || format!("{}: difference {}", x.render(alphabet), (&lhs - &rhs).render(alphabet)));
    }
    Ok(c)
}

/// The three unshuffle coalgebra identities, the half-sum identities, the
/// counit law and grading, on every generator of degree `≤ max`.
pub fn unshuffle_axioms<A: Atom>(alphabet: &Alphabet, max: usize) -> Result<Vec<Check>> {
    let k = kind::<A>();
    let mut c1 = Check::new(format!("(Δ≺⊗I)Δ≺ = (I⊗Δ̄)Δ≺ on {k}"));
    let mut c2 = Check::new(format!("(Δ≻⊗I)Δ≺ = (I⊗Δ≺)Δ≻ on {k}"));
    let mut c3 = Check::new(format!("(Δ̄⊗I)Δ≻ = (I⊗Δ≻)Δ≻ on {k}"));
    let mut halves = Check::new(format!("Δ = Δ⁺≺ + Δ⁺≻ and Δ̄ = Δ≺ + Δ≻ on {k}"));
    let mut counit = Check::new(format!("counit law on {k}"));
    let mut grading = Check::new(format!("grading on {k}"));
    for x in generators::<A>(alphabet, max)? {
        let show = || x.render(alphabet);
        let full = coproduct(&x, Variant::Full);
        let left = coproduct(&x, Variant::Left);
        let right = coproduct(&x, Variant::Right);
        let t1 = (apply_left(&left, Variant::Left), apply_right(&left, Variant::Reduced));
        c1.record(t1.0 == t1.1, || format!("{}: difference {}", show(), (&t1.0 - &t1.1).render(alphabet)));
        let t2 = (apply_left(&left, Variant::Right), apply_right(&right, Variant::Left));
        c2.record(t2.0 == t2.1, || format!("{}: difference {}", show(), (&t2.0 - &t2.1).render(alphabet)));
        let t3 = (apply_left(&right, Variant::Reduced), apply_right(&right, Variant::Right));
        c3.record(t3.0 == t3.1, || format!("{}: difference {}", show(), (&t3.0 - &t3.1).render(alphabet)));

        let plus = &coproduct(&x, Variant::LeftPlus) + &coproduct(&x, Variant::RightPlus);
        let reduced = &left + &right;
        halves.record(plus == full && reduced == coproduct(&x, Variant::Reduced), show);

        let id = Element::basis(x.clone());
        counit.record(counit_left(&full) == id && counit_right(&full) == id, show);
        grading.record(full.keys().all(|(l, r)| l.degree() + r.degree() == x.degree()), show);
    }
    Ok(vec![c1, c2, c3, halves, counit, grading])
}

/// `Δ⁺≺(a|b) = Δ⁺≺(a)·Δ(b)` and `Δ⁺≻(a|b) = Δ⁺≻(a)·Δ(b)` for every pair of
/// non-unit basis bar words of total degree `≤ max`.
pub fn bialgebra_compatibility<A: Atom>(alphabet: &Alphabet, max: usize) -> Result<Vec<Check>> {
    let k = kind::<A>();
    let mut d1 = Check::new(format!("Δ⁺≺(a|b) = Δ⁺≺(a)Δ(b) on {k}"));
    let mut d2 = Check::new(format!("Δ⁺≻(a|b) = Δ⁺≻(a)Δ(b) on {k}"));
    let bars = BarWord::<A>::basis_up_to(alphabet, max.saturating_sub(1), false)?;
    for a in &bars {
        for b in bars.iter().filter(|b| a.degree() + b.degree() <= max) {
            let ab = a.concat(b);
            let full_b = coproduct(b, Variant::Full);
            let show = || format!("a = {}, b = {}", a.render(alphabet), b.render(alphabet));
            d1.record(coproduct(&ab, Variant::LeftPlus) == coproduct(a, Variant::LeftPlus).mul(&full_b), show);
            d2.record(coproduct(&ab, Variant::RightPlus) == coproduct(a, Variant::RightPlus).mul(&full_b), show);
        }
    }
    Ok(vec![d1, d2])
}

fn differ<A: Atom>(f: &Functional<A>, g: &Functional<A>, max: usize) -> Result<Option<String>> {
    Ok(f.differences(g, max)?.first().map(|b| {
        let fv = f.eval(b).map(|c| c.to_string()).unwrap_or_default();
        let gv = g.eval(b).map(|c| c.to_string()).unwrap_or_default();
        format!("on {}: {fv} vs {gv}", b.render(f.alphabet()))
    }))
}

/// The three half-shuffle identities and the four unit laws on `samples`
/// random triples of augmented functionals, compared on every basis bar word
/// of degree `≤ max`.
pub fn half_shuffle_axioms<A: Atom>(alphabet: &Alphabet, max: usize, seed: u64, samples: usize) -> Result<Vec<Check>> {
    let k = kind::<A>();
    let mut a1 = Check::new(format!("(f≺g)≺h = f≺(g*h) on {k}"));
    let mut a2 = Check::new(format!("(f≻g)≺h = f≻(g≺h) on {k}"));
    let mut a3 = Check::new(format!("(f*g)≻h = f≻(g≻h) on {k}"));
    let mut units = Check::new(format!("f≺e = f = e≻f, e≺f = 0 = f≻e on {k}"));
    let e = Functional::<A>::augmentation(alphabet, max);
    let zero = Functional::<A>::zero(alphabet, max);
    for s in 0..samples as u64 {
        let base = seed.wrapping_mul(1_000_003).wrapping_add(3 * s);
        let f = Functional::<A>::random(alphabet, max, base, RandomKind::Augmented);
        let g = Functional::<A>::random(alphabet, max, base + 1, RandomKind::Augmented);
        let h = Functional::<A>::random(alphabet, max, base + 2, RandomKind::Augmented);
        let w = |r: Option<String>| move || format!("sample {s} {}", r.unwrap_or_default());

        let r = differ(&f.prec(&g)?.prec(&h)?, &f.prec(&g.convolve(&h)?)?, max)?;
        a1.record(r.is_none(), w(r.clone()));
        let r = differ(&f.succ(&g)?.prec(&h)?, &f.succ(&g.prec(&h)?)?, max)?;
        a2.record(r.is_none(), w(r.clone()));
        let r = differ(&f.convolve(&g)?.succ(&h)?, &f.succ(&g.succ(&h)?)?, max)?;
        a3.record(r.is_none(), w(r.clone()));

        let laws = [
            differ(&f.prec(&e)?, &f, max)?,
            differ(&e.succ(&f)?, &f, max)?,
            differ(&e.prec(&f)?, &zero, max)?,
            differ(&f.succ(&e)?, &zero, max)?,
        ];
        let bad = laws.into_iter().flatten().next();
        units.record(bad.is_none(), w(bad.clone()));
    }
    Ok(vec![a1, a2, a3, units])
}

/// `Δ∘Sp = (Sp⊗Sp̄)∘Δ` for the full coproduct and both half coproducts on
/// every word of length `≤ max`.
pub fn sp_morphism(alphabet: &Alphabet, max: usize) -> Result<Vec<Check>> {
    let variants = [
        (Variant::Full, "Δ∘Sp = (Sp⊗Sp̄)∘Δ"),
        (Variant::LeftPlus, "Δ⁺≺∘Sp = (Sp⊗Sp̄)∘Δ⁺≺"),
        (Variant::RightPlus, "Δ⁺≻∘Sp = (Sp⊗Sp̄)∘Δ⁺≻"),
        (Variant::Left, "Δ≺∘Sp = (Sp⊗Sp̄)∘Δ≺"),
        (Variant::Right, "Δ≻∘Sp = (Sp⊗Sp̄)∘Δ≻"),
    ];
    let mut checks: Vec<Check> = variants.iter().map(|(_, n)| Check::new(format!("{n} on words"))).collect();
    for x in generators::<Word>(alphabet, max)? {
        let image = sp(&x)?;
        for ((v, _), c) in variants.iter().zip(checks.iter_mut()) {
            let lhs = coproduct_element(&image, *v);
            let rhs = sp_tensor(&coproduct(&x, *v))?;
            c.record(lhs == rhs, || format!("{}: difference {}", x.render(alphabet), (&lhs - &rhs).render(alphabet)));
        }
    }
    Ok(checks)
}

/// `Sp^*` against `≺`, `≻` and `*` on random pairs of augmented functionals on
/// decorated partitions, compared on every word bar word of degree `≤ max`.
pub fn sp_dual(alphabet: &Alphabet, max: usize, seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut prec = Check::new("Sp^*(f≺g) = Sp^*f≺Sp^*g");
    let mut succ = Check::new("Sp^*(f≻g) = Sp^*f≻Sp^*g");
    let mut conv = Check::new("Sp^*(f*g) = Sp^*f*Sp^*g");
    let mut unit = Check::new("Sp^*(e) = e");
    let e = Functional::<DecoratedNC>::augmentation(alphabet, max);
    let r = differ(&pullback_sp(&e), &Functional::augmentation(alphabet, max), max)?;
    unit.record(r.is_none(), || r.clone().unwrap_or_default());
    for s in 0..samples as u64 {
        let base = seed.wrapping_mul(7_000_003).wrapping_add(2 * s);
        let f = Functional::<DecoratedNC>::random(alphabet, max, base, RandomKind::Augmented);
        let g = Functional::<DecoratedNC>::random(alphabet, max, base + 1, RandomKind::Augmented);
        let (pf, pg) = (pullback_sp(&f), pullback_sp(&g));
        let w = |r: Option<String>| move || format!("sample {s} {}", r.unwrap_or_default());
        let r = differ(&pullback_sp(&f.prec(&g)?), &pf.prec(&pg)?, max)?;
        prec.record(r.is_none(), w(r.clone()));
        let r = differ(&pullback_sp(&f.succ(&g)?), &pf.succ(&pg)?, max)?;
        succ.record(r.is_none(), w(r.clone()));
        let r = differ(&pullback_sp(&f.convolve(&g)?), &pf.convolve(&pg)?, max)?;
        conv.record(r.is_none(), w(r.clone()));
    }
    Ok(vec![prec, succ, conv, unit])
}

/// `Ψ(L⊗w) = κ^L(w)` for `L ∈ NC_m`, `m ≤ n`, with a random rational `κ` on
/// `n` distinct letters.
pub fn keyrell(n: usize, seed: u64) -> Result<Check> {
    let alphabet = Alphabet::generic(n.max(1));
    let kappa = Functional::<Word>::random(&alphabet, n.max(1), seed, RandomKind::Infinitesimal);
    let report = verify_keyrell(&kappa, n)?;
    let mut c = Check::new(format!("Ψ(L⊗w) = κ^L(w) and Σ_L κ^L = φ for n <= {n}"));
    c.checked = report.checked + report.principal_checked;
    c.failed = report.failures.len() + report.principal_failures.len();
    c.witnesses = report.failures.iter().chain(&report.principal_failures).take(MAX_WITNESSES).cloned().collect();
    Ok(c)
}

fn random_sequence(seed: u64, tag: &str, sample: usize, n: usize) -> Vec<Coefficient> {
    (1..=n).map(|i| random_rational(seed, &format!("{tag}/{sample}/{i}"))).collect()
}

/// Moments to cumulants and back, both ways and both flavors, on `samples`
/// random rational sequences of order `n`.
pub fn roundtrips(n: usize, seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for flavor in [Flavor::Classical, Flavor::Free] {
        let name = match flavor {
            Flavor::Classical => "classical",
            Flavor::Free => "free",
        };
        let to_m = |c: &CumulantSequence| match flavor {
            Flavor::Classical => classical_moments_from_cumulants(c),
            Flavor::Free => free_moments_from_cumulants(c),
        };
        let to_k = |m: &MomentSequence| match flavor {
            Flavor::Classical => classical_cumulants_from_moments(m),
            Flavor::Free => free_cumulants_from_moments(m),
        };
        let mut kmk = Check::new(format!("{name} cumulants -> moments -> cumulants, order {n}"));
        let mut mkm = Check::new(format!("{name} moments -> cumulants -> moments, order {n}"));
        for s in 0..samples {
            let k = CumulantSequence::new(flavor, random_sequence(seed, &format!("{name}-k"), s, n));
            let back = to_k(&to_m(&k)?)?;
            kmk.record(back == k, || format!("sample {s}: {:?}", k.values()));
            let m = MomentSequence::from_positive(random_sequence(seed, &format!("{name}-m"), s, n));
            let back = to_m(&to_k(&m)?)?;
            mkm.record(back == m, || format!("sample {s}: {:?}", m.values()));
        }
        checks.push(kmk);
        checks.push(mkm);
    }
    Ok(checks)
}

/// `(ρ⊗ρ̄)∘Δ = Δ̃∘ρ` and equal cut and split counts on `NC_n`, `n ≤ max`.
pub fn tree_check(max: usize) -> Result<Check> {
    let report = tree_consistency(max)?;
    let mut c = Check::new(format!("(ρ⊗ρ̄)∘Δ = Δ̃∘ρ on partitions of size <= {max}"));
    c.checked = report.checked;
    c.failed = report.mismatches.len() + report.count_differences.len();
    for m in report.mismatches.iter().take(MAX_WITNESSES) {
        c.witnesses.push(format!(
            "{}: transported {} | on trees {}",
            m.partition,
            render_tree_tensor(&m.transported),
            render_tree_tensor(&m.on_trees)
        ));
    }
    for p in report.count_differences.iter().take(MAX_WITNESSES.saturating_sub(c.witnesses.len())) {
        c.witnesses.push(format!("{p}: split and cut counts differ"));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let o = VerifyOptions { max_degree: 3, alphabet: Alphabet::generic(2), seed: 5, samples: 2 };
        for s in
            [Suite::Coassoc, Suite::Unshuffle, Suite::Halfshuffle, Suite::SpMorphism, Suite::Keyrell, Suite::Roundtrip]
        {
            let r = run_suite(s, &o).unwrap();
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn tree_suite_reports_counterexamples() {
        assert!(tree_check(4).unwrap().passed());
        let c = tree_check(5).unwrap();
        assert!(!c.passed());
        assert!(c.witnesses.iter().any(|w| w.starts_with("{1,3,5}{2}{4}")));
    }

    #[test]
    fn unshuffle_identities_extend_to_bar_words() {
        // Not required by the checks above: the identities on products.
        let a = Alphabet::generic(2);
        for x in BarWord::<Word>::basis_up_to(&a, 4, false).unwrap() {
            let left = coproduct(&x, Variant::Left);
            assert_eq!(apply_left(&left, Variant::Left), apply_right(&left, Variant::Reduced), "{}", x.render(&a));
        }
    }
}
