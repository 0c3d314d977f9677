//! Positive words, tree-pair diagrams, normal forms and growth series for the
//! generalized Thompson groups `F(p)`, `p >= 2`.

pub mod automaton;
pub mod diagrams;
pub mod error;
pub mod fordham;
pub mod normal_forms;
pub mod oracle;
pub mod poly;
pub mod rates;
pub mod series;
pub mod words;

pub use automaton::{build_automaton, count_paths, CountingAutomaton, State};
pub use diagrams::{evaluate, PTree, TreePair};
pub use error::{Error, Result};
pub use fordham::{classify, positive_length, CaretClass, ClassifiedTree, WeightTable};
pub use oracle::{verify_suite, Profile, VerifyReport};
pub use normal_forms::{finite_nf, is_in_lp, to_infinite_nf, unbar, RewriteRule, RewriteStep};
pub use poly::IntPoly;
pub use rates::{rate_report, xi, xi_asymptotic, zeta, Enclosure, RateResult};
pub use series::{positive_growth_series, GrowthSeriesBundle, PowerSeries};
pub use words::{Letter, Sign, Word};
