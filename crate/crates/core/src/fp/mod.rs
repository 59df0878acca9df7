//! Finitely presented groups: words, presentations, coset enumeration,
//! Reidemeister–Schreier rewriting and Tietze simplification.

pub mod coset;
pub mod presentation;
pub mod relations;
pub mod rs;
pub mod tietze;
pub mod word;

pub use coset::{coset_enumerate, CosetTable};
pub use presentation::{parse_subgroup_words, Presentation};
pub use relations::{exact_relations, relations_lower, relations_upper};
pub use rs::{reidemeister_schreier, SubgroupPresentation};
pub use tietze::{tietze_simplify, tietze_simplify_with, TietzeOptions};
pub use word::{free_reduce, Word};
