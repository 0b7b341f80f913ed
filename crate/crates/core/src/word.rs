//! Finite alphabets and non-empty words over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u16);

/// A declared, finite, ordered set of letter names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Parse("alphabet must not be empty".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::Parse("alphabet too large".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| ".|:,{}() \t".contains(c)) {
                return Err(Error::Parse(format!("invalid letter name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("letter `{n}` declared twice")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Comma-separated names, e.g. `a,b,c`.
    pub fn parse_list(s: &str) -> Result<Self> {
        Alphabet::new(s.split(',').map(|t| t.trim().to_string()).collect())
    }

    /// `a1, …, an`: the generic alphabet of distinct letters.
    pub fn generic(n: usize) -> Self {
        Alphabet { names: (1..=n).map(|i| format!("a{i}")).collect() }
    }

    pub fn single(name: &str) -> Self {
        Alphabet::new(vec![name.to_string()]).expect("valid single letter")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u16).map(Letter)
    }

    pub fn name(&self, l: Letter) -> &str {
        self.names.get(l.0 as usize).map(String::as_str).unwrap_or("?")
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u16))
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Parses `a1.a2.a3`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Word::new(s.split('.').map(|t| self.letter(t.trim())).collect::<Result<Vec<_>>>()?)
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(".")
    }

    /// All words of length `n`, in lexicographic letter order.
    pub fn words(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Vec<Letter>| {
                    self.letters().map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().filter(|w| !w.is_empty()).map(Word).collect()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|l| (l.0 as usize) < self.names.len())
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.names
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::single("a")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

/// A non-empty word; the empty word only exists as the algebra unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parse("words must be non-empty".into()));
        }
        Ok(Word(letters))
    }

    /// `a^{⊗n}` for a single letter.
    pub fn power(l: Letter, n: usize) -> Result<Self> {
        Word::new(vec![l; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `a_S` for 0-based positions; `None` when `positions` is empty.
    pub fn restrict(&self, positions: &[usize]) -> Option<Word> {
        if positions.is_empty() {
            return None;
        }
        Some(Word(positions.iter().map(|&p| self.0[p]).collect()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let a = Alphabet::parse_list("a1,a2,a3").unwrap();
        let w = a.parse_word("a1.a3.a1").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(a.render_word(&w), "a1.a3.a1");
        assert!(matches!(a.parse_word("a1.b"), Err(Error::UnknownLetter(_))));
        assert!(a.parse_word("").is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::parse_list("a,a").is_err());
        assert!(Alphabet::parse_list("a.b").is_err());
        assert!(Alphabet::new(vec![]).is_err());
        let json = serde_json::to_string(&Alphabet::generic(2)).unwrap();
        assert_eq!(json, r#"["a1","a2"]"#);
    }

    #[test]
    fn enumerate_words() {
        let a = Alphabet::generic(3);
        assert_eq!(a.words(2).len(), 9);
        assert_eq!(a.words(0).len(), 0);
        let w = a.parse_word("a1.a2.a3").unwrap();
        assert_eq!(a.render_word(&w.restrict(&[0, 2]).unwrap()), "a1.a3");
        assert!(w.restrict(&[]).is_none());
    }
}
