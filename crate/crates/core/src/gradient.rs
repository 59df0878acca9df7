//! Subgroup sequences in `G = A × B` and their rank and torsion gradients.
//!
//! Every level is handled on its own: the subgroup `U` is given by words in
//! the generators of `G`, its coset table is enumerated, and the
//! Reidemeister–Schreier presentation supplies `U^{ab}`. Infima and lower
//! limits over the whole sequence are replaced by minima over the computed
//! range.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{torsion_inequality, BOUND3_CONSTANT};
use crate::error::{Error, Result};
use crate::fp::coset::coset_enumerate;
use crate::fp::presentation::Presentation;
use crate::fp::rs::reidemeister_schreier;
use crate::fp::tietze::{tietze_simplify_with, TietzeOptions};
use crate::fp::word::Word;
use crate::interval::floor_pow_3_7;

pub const SPEC_FORMAT: &str = "subgrad-sequence/1";
pub const DEFAULT_MAX_INDEX: usize = 5000;
pub const HYPOTHESIS_MESSAGE: &str = "index-growth hypothesis not met";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// `U = {(x, y) : q(x) = q(y)}` for a quotient `q` of `A = B`.
    FiberProduct,
    /// Explicit subgroup words in the generators of `G`.
    CosetTable,
    /// `U = A₀ × B₀`.
    ProductOfSubgroups,
}

impl SequenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::FiberProduct => "fiber-product",
            SequenceKind::CosetTable => "coset-table",
            SequenceKind::ProductOfSubgroups => "product-of-subgroups",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub name: String,
    /// Generators of `U` as words in the generators of `G`.
    pub words: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub name: String,
    pub kind: SequenceKind,
    pub factor_a: Presentation,
    pub factor_b: Presentation,
    pub levels: Vec<Level>,
    pub max_cosets: usize,
    pub max_index: usize,
}

impl SequenceSpec {
    fn new(name: &str, kind: SequenceKind, factor_a: Presentation, factor_b: Presentation, levels: Vec<Level>) -> Self {
        SequenceSpec {
            name: name.to_string(),
            kind,
            factor_a,
            factor_b,
            levels,
            max_cosets: 1_000_000,
            max_index: DEFAULT_MAX_INDEX,
        }
    }

    /// Fiber products of `A × A` over the quotients `A/⟨⟨R⟩⟩`, one relator
    /// set `R` per level. `U` is generated by the diagonal generators and
    /// `R` placed in the first factor.
    pub fn fiber_product(name: &str, factor: Presentation, quotients: &[(&str, Vec<Word>)]) -> Self {
        let r = factor.rank();
        let levels = quotients
            .iter()
            .map(|(label, rels)| {
                let mut words: Vec<Word> = (0..r).map(|i| Word::generator(i).mul(&Word::generator(i + r))).collect();
                words.extend(rels.iter().cloned());
                Level {
                    name: label.to_string(),
                    words,
                }
            })
            .collect();
        Self::new(name, SequenceKind::FiberProduct, factor.clone(), factor, levels)
    }

    /// `A₀ × B₀` per level, each factor given by words in its own generators.
    pub fn product_of_subgroups(name: &str, factor_a: Presentation, factor_b: Presentation, levels: &[(&str, Vec<Word>, Vec<Word>)]) -> Self {
        let shift = shift_images(factor_a.rank(), factor_b.rank());
        let levels = levels
            .iter()
            .map(|(label, wa, wb)| Level {
                name: label.to_string(),
                words: wa.iter().cloned().chain(wb.iter().map(|w| w.substitute(&shift))).collect(),
            })
            .collect();
        Self::new(name, SequenceKind::ProductOfSubgroups, factor_a, factor_b, levels)
    }

    pub fn coset_table(name: &str, factor_a: Presentation, factor_b: Presentation, levels: Vec<Level>) -> Self {
        Self::new(name, SequenceKind::CosetTable, factor_a, factor_b, levels)
    }

    /// `F₂ × F₂` with fiber products over the Klein four-group, `S₄` and
    /// `S₆`; each quotient has multiplier `Z/2`, so every level has torsion.
    pub fn standard_fiber_products() -> Self {
        let w = |s: &[&str]| s.iter().map(|x| Word::parse(x).expect("valid word")).collect::<Vec<_>>();
        Self::fiber_product(
            "F2xF2 fiber products",
            Presentation::free(2),
            &[
                ("V4", w(&["aa", "bb", "abAB"])),
                ("S4", w(&["aa", "bbb", "abababab"])),
                ("S6", w(&["aa", "bbbbbb", "ababababab", "aBabaBabaBab", "aBBabbaBBabb", "aBBBabbbaBBBabbb"])),
            ],
        )
    }

    pub fn group(&self) -> Presentation {
        Presentation::direct_product(&self.factor_a, &self.factor_b)
    }

    pub fn truncate(&mut self, n_max: usize) {
        self.levels.truncate(n_max);
    }

    /// Parse the TOML sequence format (see the README).
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |s| line_of(text, s.start));
            Error::parse(line, e.message().to_string())
        })?;
        if raw.format.get_ref() != SPEC_FORMAT {
            return Err(Error::parse(line_of(text, raw.format.span().start), format!("expected format \"{SPEC_FORMAT}\"")));
        }
        let words = |list: &[toml::Spanned<String>]| -> Result<Vec<Word>> {
            list.iter()
                .map(|s| Word::parse(s.get_ref()).map_err(|e| crate::fp::presentation::relocate(e, line_of(text, s.span().start))))
                .collect()
        };
        let factor = |f: &Option<RawFactor>| -> Result<Presentation> {
            match f {
                None => Ok(Presentation::free(2)),
                Some(f) => Presentation::new(f.gens, words(&f.relators)?),
            }
        };
        let factor_a = factor(&raw.factor_a)?;
        let factor_b = match raw.factor_b {
            None => factor_a.clone(),
            Some(_) => factor(&raw.factor_b)?,
        };
        let name = raw.name.clone().unwrap_or_else(|| "sequence".into());
        let kind_line = line_of(text, raw.kind.span().start);
        let label = |i: usize, l: &RawLevel| l.name.clone().unwrap_or_else(|| format!("level{}", i + 1));
        let field = |l: &RawLevel, f: &'static str| -> Result<Vec<Word>> {
            let list = match f {
                "relators" => &l.relators,
                "words" => &l.words,
                "a_words" => &l.a_words,
                _ => &l.b_words,
            };
            match list {
                Some(v) => words(v),
                None => Err(Error::parse(kind_line, format!("every level needs `{f}`"))),
            }
        };
        let mut spec = match raw.kind.get_ref().as_str() {
            "fiber-product" => {
                if factor_a != factor_b {
                    return Err(Error::parse(kind_line, "fiber products need equal factors"));
                }
                let levels: Vec<(String, Vec<Word>)> = raw.level.iter().enumerate().map(|(i, l)| Ok((label(i, l), field(l, "relators")?))).collect::<Result<_>>()?;
                let refs: Vec<(&str, Vec<Word>)> = levels.iter().map(|(n, w)| (n.as_str(), w.clone())).collect();
                Self::fiber_product(&name, factor_a, &refs)
            }
            "coset-table" => {
                let levels = raw
                    .level
                    .iter()
                    .enumerate()
                    .map(|(i, l)| Ok(Level { name: label(i, l), words: field(l, "words")? }))
                    .collect::<Result<_>>()?;
                Self::coset_table(&name, factor_a, factor_b, levels)
            }
            "product-of-subgroups" => {
                let levels: Vec<(String, Vec<Word>, Vec<Word>)> = raw
                    .level
                    .iter()
                    .enumerate()
                    .map(|(i, l)| Ok((label(i, l), field(l, "a_words")?, field(l, "b_words")?)))
                    .collect::<Result<_>>()?;
                let refs: Vec<(&str, Vec<Word>, Vec<Word>)> = levels.iter().map(|(n, a, b)| (n.as_str(), a.clone(), b.clone())).collect();
                Self::product_of_subgroups(&name, factor_a, factor_b, &refs)
            }
            other => return Err(Error::parse(kind_line, format!("unknown sequence kind `{other}`"))),
        };
        let rank = spec.group().rank();
        for level in &spec.levels {
            if let Some(w) = level.words.iter().find(|w| w.rank_used() > rank) {
                return Err(Error::parse(kind_line, format!("word `{w}` uses a generator beyond {rank}")));
            }
        }
        if let Some(c) = raw.max_cosets {
            spec.max_cosets = c;
        }
        if let Some(c) = raw.max_index {
            spec.max_index = c;
        }
        if spec.max_cosets == 0 || spec.max_index == 0 {
            return Err(Error::Domain("caps must be positive".into()));
        }
        if let Some(n) = raw.n_max {
            spec.truncate(n);
        }
        if spec.levels.is_empty() {
            return Err(Error::Empty);
        }
        Ok(spec)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    format: toml::Spanned<String>,
    kind: toml::Spanned<String>,
    name: Option<String>,
    n_max: Option<usize>,
    max_cosets: Option<usize>,
    max_index: Option<usize>,
    factor_a: Option<RawFactor>,
    factor_b: Option<RawFactor>,
    #[serde(default)]
    level: Vec<RawLevel>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    gens: usize,
    #[serde(default)]
    relators: Vec<toml::Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    name: Option<String>,
    relators: Option<Vec<toml::Spanned<String>>>,
    words: Option<Vec<toml::Spanned<String>>>,
    a_words: Option<Vec<toml::Spanned<String>>>,
    b_words: Option<Vec<toml::Spanned<String>>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn shift_images(from: usize, count: usize) -> Vec<Word> {
    (0..count).map(|i| Word::generator(i + from)).collect()
}

/// Torsion of `U^{ab}` against the torsion of the projections, computed by
/// coset enumeration in each factor. Reported, not asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionTorsion {
    pub torsion_a: BigInt,
    pub torsion_b: BigInt,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradientRecord {
    pub n: usize,
    pub name: String,
    /// `[G : U]`.
    pub index: usize,
    /// `[A : A ∩ U]`.
    pub index_a: usize,
    pub index_b: usize,
    /// `[G : AU] = [G : U] / [A : A ∩ U]`.
    pub index_g_au: usize,
    pub index_g_bu: usize,
    /// Number of subgroup words generating `U`.
    pub word_count: usize,
    /// Generators left after Tietze elimination.
    pub tietze_rank: usize,
    /// The three generator bounds with `d(G)` replaced by the rank of the
    /// presentation of `G`.
    pub bounds: [u64; 3],
    pub smallest_bound: usize,
    pub d_upper: usize,
    pub d_upper_source: &'static str,
    /// Minimal generator count of `U^{ab}`.
    pub d_lower: Option<usize>,
    pub betti: usize,
    pub torsion_factors: Vec<BigInt>,
    pub torsion_order: BigInt,
    pub log_torsion: f64,
    pub rank_ratio: BigRational,
    pub torsion_ratio: f64,
    /// Both `[A : A ∩ U]` and `[B : B ∩ U]` exceed every earlier level.
    pub hypothesis_ok: bool,
    pub projection_torsion: Option<ProjectionTorsion>,
    /// Nielsen–Schreier prediction for products of subgroups of free factors.
    pub betti_expected: Option<usize>,
}

fn compute_level(spec: &SequenceSpec, g: &Presentation, n: usize, level: &Level) -> Result<GradientRecord> {
    let table = coset_enumerate(g, &level.words, spec.max_cosets)?;
    let index = table.index();
    if index > spec.max_index {
        return Err(Error::CapExceeded {
            what: "subgroup index",
            size: index,
            cap: spec.max_index,
        });
    }
    let ra = spec.factor_a.rank();
    let rb = spec.factor_b.rank();
    let a_gens: Vec<usize> = (0..ra).collect();
    let b_gens: Vec<usize> = (ra..ra + rb).collect();
    let index_a = table.orbit_size(0, &a_gens);
    let index_b = table.orbit_size(0, &b_gens);
    let index_g_au = index / index_a;
    let index_g_bu = index / index_b;

    let sp = reidemeister_schreier(&table)?;
    let inv = sp.abelian_invariants();
    let simplified = tietze_simplify_with(
        &sp,
        TietzeOptions {
            redundancy_cap: 0,
            ..TietzeOptions::default()
        },
    );
    let tietze_rank = simplified.rank();

    let d_g = g.rank() as u64;
    let f = floor_pow_3_7(index as u64).to_u64().unwrap_or(u64::MAX);
    let bounds = [
        d_g * (index_g_au + index_a) as u64,
        d_g * (index_g_bu + index_b) as u64,
        d_g.saturating_mul((index_g_au as u64).saturating_add(BOUND3_CONSTANT.saturating_mul(index_g_bu as u64).saturating_mul(f))),
    ];
    let smallest_bound = (0..3).min_by_key(|&i| bounds[i]).expect("three bounds") + 1;
    let candidates: [(u64, &'static str); 5] = [
        (level.words.len() as u64, "subgroup-words"),
        (tietze_rank as u64, "tietze"),
        (bounds[0], "bound1"),
        (bounds[1], "bound2"),
        (bounds[2], "bound3"),
    ];
    let (d_upper, d_upper_source) = candidates.iter().copied().min_by_key(|c| c.0).expect("nonempty");
    let d_upper = d_upper as usize;

    let projection_torsion = projection_torsion(spec, level, &inv.torsion_order, index)?;
    let betti_expected = (spec.kind == SequenceKind::ProductOfSubgroups
        && spec.factor_a.relators().is_empty()
        && spec.factor_b.relators().is_empty())
    .then(|| (index_a * ra.saturating_sub(1) + 1) + (index_b * rb.saturating_sub(1) + 1));

    let log_torsion = inv.log_torsion();
    Ok(GradientRecord {
        n,
        name: level.name.clone(),
        index,
        index_a,
        index_b,
        index_g_au,
        index_g_bu,
        word_count: level.words.len(),
        tietze_rank,
        bounds,
        smallest_bound,
        d_upper,
        d_upper_source,
        d_lower: Some(inv.rank()),
        betti: inv.betti,
        torsion_factors: inv.torsion_factors.clone(),
        torsion_order: inv.torsion_order.clone(),
        log_torsion,
        rank_ratio: BigRational::new(BigInt::from(d_upper.saturating_sub(1)), BigInt::from(index)),
        torsion_ratio: log_torsion / index as f64,
        hypothesis_ok: true,
        projection_torsion,
        betti_expected,
    })
}

/// Torsion of `π_A(U)^{ab}` and `π_B(U)^{ab}` from the projected words.
fn projection_torsion(spec: &SequenceSpec, level: &Level, t_u: &BigInt, index: usize) -> Result<Option<ProjectionTorsion>> {
    let ra = spec.factor_a.rank() as i32;
    let project = |keep: &dyn Fn(i32) -> Option<i32>| -> Vec<Word> {
        level
            .words
            .iter()
            .map(|w| Word::from_letters(w.letters().iter().filter_map(|&l| keep(l.abs()).map(|g| g * l.signum()))))
            .collect()
    };
    let wa = project(&|g| (g <= ra).then_some(g));
    let wb = project(&|g| (g > ra).then_some(g - ra));
    let torsion = |p: &Presentation, words: &[Word]| -> Result<BigInt> {
        let t = coset_enumerate(p, words, spec.max_cosets)?;
        Ok(reidemeister_schreier(&t)?.abelian_invariants().torsion_order)
    };
    let t_a = torsion(&spec.factor_a, &wa)?;
    let t_b = torsion(&spec.factor_b, &wb)?;
    let (pass, _, _) = torsion_inequality(t_u, &t_a, &t_b, index as u64);
    Ok(Some(ProjectionTorsion {
        torsion_a: t_a,
        torsion_b: t_b,
        pass,
    }))
}

/// One record per level, computed in parallel and returned in level order.
pub fn run_sequence(spec: &SequenceSpec) -> Result<Vec<GradientRecord>> {
    if spec.levels.is_empty() {
        return Err(Error::Empty);
    }
    let g = spec.group();
    let mut records: Vec<GradientRecord> = spec
        .levels
        .par_iter()
        .enumerate()
        .map(|(i, level)| compute_level(spec, &g, i + 1, level))
        .collect::<Result<_>>()?;
    let (mut max_a, mut max_b) = (0, 0);
    for (i, r) in records.iter_mut().enumerate() {
        r.hypothesis_ok = i == 0 || (r.index_a > max_a && r.index_b > max_b);
        max_a = max_a.max(r.index_a);
        max_b = max_b.max(r.index_b);
    }
    Ok(records)
}

/// `min (d_upper − 1) / [G : U]`, an upper bound for the rank gradient of
/// the computed range.
pub fn rank_gradient_estimate(records: &[GradientRecord]) -> Result<BigRational> {
    records.iter().map(|r| r.rank_ratio.clone()).min().ok_or(Error::Empty)
}

/// `min ln |t(U^{ab})| / [G : U]` over the computed range.
pub fn torsion_gradient_estimate(records: &[GradientRecord]) -> Result<f64> {
    records.iter().map(|r| r.torsion_ratio).reduce(f64::min).ok_or(Error::Empty)
}

pub const CSV_HEADER: &str = "n,name,index,index_a,index_b,index_g_au,index_g_bu,word_count,tietze_rank,bound1,bound2,bound3,smallest_bound,d_upper,d_upper_source,d_lower,betti,torsion,log_torsion,rank_ratio,torsion_ratio,hypothesis,projection_torsion_a,projection_torsion_b,torsion_bound,betti_expected";

fn fixed(x: f64) -> String {
    format!("{x:.12}")
}

fn torsion_string(r: &GradientRecord) -> String {
    r.torsion_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), |v| v.to_string())
}

/// CSV with a versioned comment line and a fixed column order.
pub fn to_csv(records: &[GradientRecord]) -> String {
    let mut out = format!("# subgrad-gradient v1\n{CSV_HEADER}\n");
    for r in records {
        let pt = r.projection_torsion.as_ref();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.name,
            r.index,
            r.index_a,
            r.index_b,
            r.index_g_au,
            r.index_g_bu,
            r.word_count,
            r.tietze_rank,
            r.bounds[0],
            r.bounds[1],
            r.bounds[2],
            r.smallest_bound,
            r.d_upper,
            r.d_upper_source,
            opt(&r.d_lower),
            r.betti,
            torsion_string(r),
            fixed(r.log_torsion),
            r.rank_ratio,
            fixed(r.torsion_ratio),
            if r.hypothesis_ok { "ok" } else { "hypothesis-violated" },
            opt(&pt.map(|p| p.torsion_a.clone())),
            opt(&pt.map(|p| p.torsion_b.clone())),
            opt(&pt.map(|p| if p.pass { "pass" } else { "fail" })),
            opt(&r.betti_expected),
        )
        .expect("writing to a string");
    }
    out
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    n: usize,
    name: &'a str,
    index: usize,
    index_a: usize,
    index_b: usize,
    index_g_au: usize,
    index_g_bu: usize,
    word_count: usize,
    tietze_rank: usize,
    bounds: [u64; 3],
    smallest_bound: usize,
    d_upper: usize,
    d_upper_source: &'a str,
    d_lower: Option<usize>,
    betti: usize,
    torsion_factors: Vec<String>,
    torsion_order: String,
    log_torsion: String,
    rank_ratio: String,
    torsion_ratio: String,
    hypothesis: &'a str,
    projection_torsion_a: Option<String>,
    projection_torsion_b: Option<String>,
    torsion_bound_pass: Option<bool>,
    betti_expected: Option<usize>,
}

/// One JSON object per record, fields in the CSV order.
pub fn to_json_lines(records: &[GradientRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let pt = r.projection_torsion.as_ref();
        let row = JsonRecord {
            n: r.n,
            name: &r.name,
            index: r.index,
            index_a: r.index_a,
            index_b: r.index_b,
            index_g_au: r.index_g_au,
            index_g_bu: r.index_g_bu,
            word_count: r.word_count,
            tietze_rank: r.tietze_rank,
            bounds: r.bounds,
            smallest_bound: r.smallest_bound,
            d_upper: r.d_upper,
            d_upper_source: r.d_upper_source,
            d_lower: r.d_lower,
            betti: r.betti,
            torsion_factors: r.torsion_factors.iter().map(|f| f.to_string()).collect(),
            torsion_order: r.torsion_order.to_string(),
            log_torsion: fixed(r.log_torsion),
            rank_ratio: r.rank_ratio.to_string(),
            torsion_ratio: fixed(r.torsion_ratio),
            hypothesis: if r.hypothesis_ok { "ok" } else { "hypothesis-violated" },
            projection_torsion_a: pt.map(|p| p.torsion_a.to_string()),
            projection_torsion_b: pt.map(|p| p.torsion_b.to_string()),
            torsion_bound_pass: pt.map(|p| p.pass),
            betti_expected: r.betti_expected,
        };
        out.push_str(&serde_json::to_string(&row).expect("serializable"));
        out.push('\n');
    }
    out
}

/// Gradient estimates and trend flags for a finished run.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub rank_estimate: BigRational,
    pub torsion_estimate: f64,
    pub hypothesis_met: bool,
    pub rank_ratio_decreasing: bool,
    pub torsion_ratio_decreasing: bool,
    /// Largest `[G : AU]` and `[G : BU]` seen.
    pub max_index_g_au: usize,
    pub max_index_g_bu: usize,
    pub betti_consistent: bool,
}

pub fn summarize(records: &[GradientRecord]) -> Result<Summary> {
    let pairs = || records.windows(2);
    Ok(Summary {
        rank_estimate: rank_gradient_estimate(records)?,
        torsion_estimate: torsion_gradient_estimate(records)?,
        hypothesis_met: records.iter().all(|r| r.hypothesis_ok),
        rank_ratio_decreasing: pairs().all(|w| w[1].rank_ratio < w[0].rank_ratio),
        torsion_ratio_decreasing: pairs().all(|w| w[1].torsion_ratio < w[0].torsion_ratio),
        max_index_g_au: records.iter().map(|r| r.index_g_au).max().unwrap_or(0),
        max_index_g_bu: records.iter().map(|r| r.index_g_bu).max().unwrap_or(0),
        betti_consistent: records.iter().all(|r| r.betti_expected.map_or(true, |b| b == r.betti)),
    })
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank gradient estimate (upper bound, min over computed range): {}; torsion gradient estimate (min over computed range): {}",
            self.rank_estimate,
            fixed(self.torsion_estimate)
        )?;
        if !self.hypothesis_met {
            write!(f, "; {HYPOTHESIS_MESSAGE}")?;
        }
        if !self.betti_consistent {
            write!(f, "; betti cross-check failed")?;
        }
        Ok(())
    }
}
