use std::fmt;

use crate::error::{Error, Result};
use crate::fp::word::Word;
use crate::smith::{abelian_invariants_from_rows, AbelianInvariants};

/// `⟨x₁, …, x_rank | relators⟩` with freely reduced, nonempty relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    rank: usize,
    relators: Vec<Word>,
    name: Option<String>,
}

impl Presentation {
    pub fn new(rank: usize, relators: impl IntoIterator<Item = Word>) -> Result<Self> {
        let relators: Vec<Word> = relators.into_iter().filter(|r| !r.is_empty()).collect();
        if let Some(r) = relators.iter().find(|r| r.rank_used() > rank) {
            return Err(Error::Domain(format!("relator {r} uses a generator beyond rank {rank}")));
        }
        Ok(Presentation { rank, relators, name: None })
    }

    pub fn free(rank: usize) -> Self {
        Presentation {
            rank,
            relators: Vec::new(),
            name: None,
        }
    }

    /// Parse relators written in the word syntax.
    pub fn from_strs(rank: usize, relators: &[&str]) -> Result<Self> {
        Self::new(rank, relators.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>>>()?)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// `P × Q`: generators of `Q` are shifted past those of `P`, and every
    /// generator of `P` commutes with every generator of `Q`.
    pub fn direct_product(p: &Presentation, q: &Presentation) -> Presentation {
        let shift: Vec<Word> = (0..q.rank).map(|i| Word::generator(i + p.rank)).collect();
        let mut relators = p.relators.clone();
        relators.extend(q.relators.iter().map(|r| r.substitute(&shift)));
        for i in 0..p.rank {
            for s in &shift {
                relators.push(Word::commutator(&Word::generator(i), s));
            }
        }
        Presentation {
            rank: p.rank + q.rank,
            relators,
            name: match (&p.name, &q.name) {
                (Some(a), Some(b)) => Some(format!("{a}x{b}")),
                _ => None,
            },
        }
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        abelian_invariants_from_rows(self.rank, self.relators.iter().map(|r| r.exponent_sums()))
    }

    /// Text format: `gens: <d>` then one `rel: <word>` per line. Blank lines
    /// and `#` comments are ignored; an optional `name: <label>` line is kept.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rank = None;
        let mut name = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, format!("expected `key: value`, found `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "gens" => {
                    if rank.is_some() {
                        return Err(Error::parse(ln, "duplicate `gens` line"));
                    }
                    rank = Some(value.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad generator count `{value}`")))?);
                }
                "rel" => {
                    let Some(d) = rank else {
                        return Err(Error::parse(ln, "`rel` before `gens`"));
                    };
                    let w = Word::parse(value).map_err(|e| relocate(e, ln))?;
                    if w.rank_used() > d {
                        return Err(Error::parse(ln, format!("relator `{value}` uses a generator beyond {d}")));
                    }
                    relators.push(w);
                }
                "name" => name = Some(value.to_string()),
                other => return Err(Error::parse(ln, format!("unknown key `{other}`"))),
            }
        }
        let rank = rank.ok_or_else(|| Error::parse(1, "missing `gens` line"))?;
        let mut p = Presentation::new(rank, relators)?;
        p.name = name;
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.rank)?;
        if let Some(n) = &self.name {
            writeln!(f, "name: {n}")?;
        }
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}

pub(crate) fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

/// Subgroup file: one `gen: <word>` per line.
pub fn parse_subgroup_words(text: &str) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let value = line
            .strip_prefix("gen:")
            .ok_or_else(|| Error::parse(ln, format!("expected `gen: <word>`, found `{line}`")))?;
        out.push(Word::parse(value).map_err(|e| relocate(e, ln))?);
    }
    Ok(out)
}
