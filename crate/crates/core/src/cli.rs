//! The `nc-hopf` command line, as a library function so it can be driven
//! in-process by tests.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coeff::Coefficient;
use crate::cumulants::{
    classical_cumulants_from_moments, classical_moments_from_cumulants, free_cumulants_from_moments,
    free_moments_from_cumulants, generalized_free_cumulants, multi_moments_from_cumulants, CumulantSequence, Flavor,
    MomentSequence, WordTable,
};
use crate::decorated::{sp, DecoratedNC};
use crate::error::{Error, Result};
use crate::hopf::{coproduct, Atom, BarWord, Element, Render, Tensor2, Variant};
use crate::moebius::{Lattice, Moebius};
use crate::partition::{enumerate_nc_partitions, enumerate_set_partitions, Limits, NonCrossingPartition, SetPartition};
use crate::tree::{
    admissible_edge_cuts, apply_cut, hierarchy_tree, render_forest, render_tree_tensor, tree_coproduct, Tree,
    TreeTensor,
};
use crate::verify::{run_suite, Suite, VerifyOptions};
use crate::word::{Alphabet, Word};

#[derive(Parser, Debug)]
#[command(
    name = "nc-hopf",
    version,
    about = "Non-crossing partitions, unshuffle coproducts and moment-cumulant transforms"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Read the command input from a file.
    #[arg(long = "in", global = true, value_name = "PATH")]
    in_path: Option<PathBuf>,
    /// Raise or lower the enumeration cap for both lattices.
    #[arg(long, global = true, env = "NCHOPF_MAX_N")]
    max_n: Option<usize>,
    /// Truncation degree for functionals and multivariate tables.
    #[arg(long, global = true, env = "NCHOPF_TRUNCATION", default_value_t = 8)]
    truncation: usize,
    /// Comma-separated letter names.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count the partitions of [n].
    Enumerate {
        lattice: LatticeArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Expand a coproduct of a bar word (`x|y|...`) or a tree.
    Coproduct {
        algebra: AlgebraArg,
        input: Option<String>,
        #[arg(long, value_enum, default_value = "full")]
        half: Half,
        /// Drop the `b⊗1` and `1⊗b` terms.
        #[arg(long)]
        reduced: bool,
    },
    /// Möbius function of an interval.
    Moebius { lattice: LatticeArg, lower: String, upper: String },
    /// Moments to cumulants or back.
    Transform {
        flavor: FlavorArg,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Use indeterminates instead of values.
        #[arg(long)]
        symbolic: bool,
        /// Order of the symbolic sequence; defaults to the truncation.
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated rationals, starting at index 1.
        #[arg(long)]
        values: Option<String>,
        /// Inline JSON table for `multi`.
        input: Option<String>,
    },
    /// The splitting map on a bar word of words.
    Split {
        input: Option<String>,
        #[arg(long)]
        count: bool,
    },
    /// Run an identity-checking suite.
    Verify {
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random samples per randomized check.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Hierarchy tree of a non-crossing partition.
    Tree {
        input: Option<String>,
        #[arg(long)]
        cuts: bool,
        #[arg(long, conflicts_with = "cuts")]
        coproduct: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LatticeArg {
    Nc,
    Set,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlgebraArg {
    Nc,
    Word,
    Decorated,
    Tree,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Half {
    Full,
    Left,
    Right,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FlavorArg {
    Classical,
    Free,
    Multi,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    K2m,
    M2k,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Coassoc,
    Unshuffle,
    Halfshuffle,
    SpMorphism,
    Keyrell,
    Roundtrip,
    TreeConsistency,
    All,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Enumerate { lattice, n, count } => enumerate(cli, *lattice, *n, *count),
        Command::Coproduct { algebra, input, half, reduced } => {
            let text = input_text(cli, input.as_deref())?;
            let v = variant(*half, *reduced);
            match algebra {
                AlgebraArg::Nc => tensor_out(
                    cli,
                    &coproduct(&BarWord::<NonCrossingPartition>::parse(&text, &Alphabet::default())?, v),
                    &Alphabet::default(),
                ),
                AlgebraArg::Word => {
                    let a = alphabet_for(cli, &text, false)?;
                    tensor_out(cli, &coproduct(&BarWord::<Word>::parse(&text, &a)?, v), &a)
                }
                AlgebraArg::Decorated => {
                    let a = alphabet_for(cli, &text, true)?;
                    tensor_out(cli, &coproduct(&BarWord::<DecoratedNC>::parse(&text, &a)?, v), &a)
                }
                AlgebraArg::Tree => {
                    if !matches!(v, Variant::Full) {
                        return Err(Error::Parse("trees only carry the full coproduct".into()));
                    }
                    let t: Tree = text.parse()?;
                    tree_tensor_out(cli, &tree_coproduct(&t))
                }
            }
        }
        Command::Moebius { lattice, lower, upper } => {
            let (l, u): (SetPartition, SetPartition) = (lower.parse()?, upper.parse()?);
            let lat = match lattice {
                LatticeArg::Nc => Lattice::NonCrossing,
                LatticeArg::Set => Lattice::SetPartitions,
            };
            let mu = Moebius::new(lat).value(&l, &u)?;
            Ok(Outcome::ok(if cli.json {
                line(json!({"lower": l.to_string(), "upper": u.to_string(), "moebius": mu}))
            } else {
                format!("{mu}\n")
            }))
        }
        Command::Transform { flavor, direction, symbolic, n, values, input } => {
            transform(cli, *flavor, *direction, *symbolic, *n, values.as_deref(), input.as_deref())
        }
        Command::Split { input, count } => {
            let text = input_text(cli, input.as_deref())?;
            let a = alphabet_for(cli, &text, false)?;
            let image = sp(&BarWord::<Word>::parse(&text, &a)?)?;
            if *count {
                let total = image.total();
                return Ok(Outcome::ok(if cli.json {
                    line(json!({"count": total.to_string()}))
                } else {
                    format!("{total}\n")
                }));
            }
            element_out(cli, &image, &a)
        }
        Command::Verify { suite, max_degree, seed, samples } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                s => vec![suite_of(*s)],
            };
            let options = VerifyOptions {
                max_degree: *max_degree,
                alphabet: match &cli.alphabet {
                    Some(s) => Alphabet::parse_list(s)?,
                    None => VerifyOptions::default().alphabet,
                },
                seed: *seed,
                samples: *samples,
            };
            let mut reports = Vec::new();
            for s in suites {
                reports.push(run_suite(s, &options)?);
            }
            let passed = reports.iter().all(|r| r.passed());
            let stdout = if cli.json {
                line(json!({"passed": passed, "suites": reports}))
            } else {
                reports.iter().map(|r| r.render()).collect()
            };
            Ok(Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() })
        }
        Command::Tree { input, cuts, coproduct } => {
            let text = input_text(cli, input.as_deref())?;
            let l: NonCrossingPartition = text.parse()?;
            let t = hierarchy_tree(&l.standardize());
            if *coproduct {
                return tree_tensor_out(cli, &tree_coproduct(&t));
            }
            if *cuts {
                let rows: Vec<(String, Tree, Vec<Tree>)> = admissible_edge_cuts(&t)
                    .into_iter()
                    .map(|c| {
                        let (r, p) = apply_cut(&t, &c);
                        (c.to_string(), r, p)
                    })
                    .collect();
                return Ok(Outcome::ok(if cli.json {
                    let v: Vec<Value> =
                        rows.iter().map(|(c, r, p)| json!({"cut": c, "root_part": r, "pruned": p})).collect();
                    line(json!({"tree": t, "cuts": v}))
                } else {
                    rows.iter()
                        .map(|(c, r, p)| {
                            let root = if r.children().is_empty() { "1".to_string() } else { r.to_string() };
                            format!("{c}  {root} ⊗ {}\n", render_forest(p))
                        })
                        .collect()
                }));
            }
            Ok(Outcome::ok(if cli.json {
                line(json!({"partition": l.to_string(), "tree": t}))
            } else {
                format!("{t}\n")
            }))
        }
    }
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn limits(cli: &Cli) -> Limits {
    match cli.max_n {
        Some(m) => Limits { max_set: m, max_nc: m },
        None => Limits::default(),
    }
}

fn input_text(cli: &Cli, inline: Option<&str>) -> Result<String> {
    match (inline, &cli.in_path) {
        (Some(s), None) => Ok(s.trim().to_string()),
        (None, Some(p)) => std::fs::read_to_string(p)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display()))),
        (Some(_), Some(_)) => Err(Error::Parse("give the input inline or with --in, not both".into())),
        (None, None) => Err(Error::Parse("missing input".into())),
    }
}

/// The declared alphabet, or the letters of `text` in order of first
/// appearance.
fn alphabet_for(cli: &Cli, text: &str, decorated: bool) -> Result<Alphabet> {
    if let Some(s) = &cli.alphabet {
        return Alphabet::parse_list(s);
    }
    let mut names: Vec<String> = Vec::new();
    for atom in text.split('|') {
        let word = if decorated { atom.rsplit_once(':').map_or("", |(_, w)| w) } else { atom };
        for l in word.split('.').map(str::trim).filter(|l| !l.is_empty() && *l != "1") {
            if !names.iter().any(|n| n == l) {
                names.push(l.to_string());
            }
        }
    }
    if names.is_empty() {
        names.push("a".into());
    }
    Alphabet::new(names)
}

fn variant(half: Half, reduced: bool) -> Variant {
    match (half, reduced) {
        (Half::Full, false) => Variant::Full,
        (Half::Full, true) => Variant::Reduced,
        (Half::Left, false) => Variant::LeftPlus,
        (Half::Left, true) => Variant::Left,
        (Half::Right, false) => Variant::RightPlus,
        (Half::Right, true) => Variant::Right,
    }
}

fn suite_of(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::Coassoc => Suite::Coassoc,
        SuiteArg::Unshuffle => Suite::Unshuffle,
        SuiteArg::Halfshuffle => Suite::Halfshuffle,
        SuiteArg::SpMorphism => Suite::SpMorphism,
        SuiteArg::Keyrell => Suite::Keyrell,
        SuiteArg::Roundtrip => Suite::Roundtrip,
        SuiteArg::TreeConsistency | SuiteArg::All => Suite::TreeConsistency,
    }
}

fn enumerate(cli: &Cli, lattice: LatticeArg, n: usize, count: bool) -> Result<Outcome> {
    let lim = limits(cli);
    let parts: Vec<SetPartition> = match lattice {
        LatticeArg::Nc => enumerate_nc_partitions(n, &lim)?.into_iter().map(|p| p.into_set_partition()).collect(),
        LatticeArg::Set => enumerate_set_partitions(n, &lim)?,
    };
    let out = match (cli.json, count) {
        (true, true) => line(json!({"n": n, "count": parts.len()})),
        (true, false) => line(json!({"n": n, "count": parts.len(), "partitions": parts})),
        (false, true) => format!("{}\n", parts.len()),
        (false, false) => parts.iter().map(|p| format!("{p}\n")).collect(),
    };
    Ok(Outcome::ok(out))
}

fn tensor_out<A: Atom>(cli: &Cli, t: &Tensor2<A>, a: &Alphabet) -> Result<Outcome> {
    Ok(Outcome::ok(if cli.json {
        let terms: Vec<Value> = t
            .iter()
            .map(|((l, r), c)| json!({"coefficient": c.to_string(), "left": l.render(a), "right": r.render(a)}))
            .collect();
        line(json!({"terms": terms}))
    } else {
        format!("{}\n", t.render(a))
    }))
}

fn element_out<A: Atom>(cli: &Cli, x: &Element<A>, a: &Alphabet) -> Result<Outcome> {
    Ok(Outcome::ok(if cli.json {
        let terms: Vec<Value> =
            x.iter().map(|(b, c)| json!({"coefficient": c.to_string(), "term": b.render(a)})).collect();
        line(json!({"terms": terms}))
    } else {
        format!("{}\n", x.render(a))
    }))
}

fn tree_tensor_out(cli: &Cli, t: &TreeTensor) -> Result<Outcome> {
    Ok(Outcome::ok(if cli.json {
        let terms: Vec<Value> =
            t.iter().map(|((l, r), c)| json!({"coefficient": c.to_string(), "left": l, "right": r})).collect();
        line(json!({"terms": terms}))
    } else {
        format!("{}\n", render_tree_tensor(t))
    }))
}

fn parse_values(s: &str) -> Result<Vec<Coefficient>> {
    s.split(',').map(|x| x.trim().parse()).collect()
}

fn transform(
    cli: &Cli,
    flavor: FlavorArg,
    direction: Direction,
    symbolic: bool,
    n: Option<usize>,
    values: Option<&str>,
    inline: Option<&str>,
) -> Result<Outcome> {
    let (flavor, name) = match flavor {
        FlavorArg::Classical => (Flavor::Classical, "classical"),
        FlavorArg::Free => (Flavor::Free, "free"),
        FlavorArg::Multi => return transform_multi(cli, direction, symbolic, n, inline),
    };
    if inline.is_some() {
        return Err(Error::Parse(format!("{name} transforms take --values or --symbolic, not a positional input")));
    }
    let input = match (symbolic, values, &cli.in_path) {
        (true, None, None) => None,
        (false, Some(v), None) => Some(parse_values(v)?),
        (false, None, Some(_)) => Some(parse_values(&input_text(cli, None)?)?),
        _ => return Err(Error::Parse("give exactly one of --symbolic, --values, --in".into())),
    };
    let order = match &input {
        Some(v) => v.len(),
        None => n.unwrap_or(cli.truncation),
    };
    let (label, out) = match direction {
        Direction::K2m => {
            let k = match input {
                Some(v) => CumulantSequence::new(flavor, v),
                None => CumulantSequence::symbolic(flavor, order),
            };
            let m = match flavor {
                Flavor::Classical => classical_moments_from_cumulants(&k)?,
                Flavor::Free => free_moments_from_cumulants(&k)?,
            };
            ("m", m.positive().to_vec())
        }
        Direction::M2k => {
            let m = match input {
                Some(v) => MomentSequence::from_positive(v),
                None => MomentSequence::symbolic(order),
            };
            let k = match flavor {
                Flavor::Classical => classical_cumulants_from_moments(&m)?,
                Flavor::Free => free_cumulants_from_moments(&m)?,
            };
            (flavor.variable_prefix(), k.values().to_vec())
        }
    };
    Ok(Outcome::ok(if cli.json {
        let vals: Vec<String> = out.iter().map(|c| c.to_string()).collect();
        line(json!({"flavor": name, "sequence": label, "values": vals}))
    } else {
        out.iter().enumerate().map(|(i, c)| format!("{label}_{} = {c}\n", i + 1)).collect()
    }))
}

fn transform_multi(
    cli: &Cli,
    direction: Direction,
    symbolic: bool,
    n: Option<usize>,
    inline: Option<&str>,
) -> Result<Outcome> {
    let table = if symbolic {
        let a = match &cli.alphabet {
            Some(s) => Alphabet::parse_list(s)?,
            None => Alphabet::default(),
        };
        let prefix = if direction == Direction::K2m { "k" } else { "m" };
        WordTable::symbolic(&a, n.unwrap_or(cli.truncation), prefix)
    } else {
        WordTable::from_json(&input_text(cli, inline)?)?
    };
    let out = match direction {
        Direction::K2m => multi_moments_from_cumulants(&table)?,
        Direction::M2k => generalized_free_cumulants(&table)?,
    };
    Ok(Outcome::ok(if cli.json {
        format!("{}\n", out.to_json())
    } else {
        out.words_by_length()
            .into_iter()
            .map(|w| format!("{} = {}\n", out.alphabet().render_word(w), out.get(w).expect("total table")))
            .collect()
    }))
}
