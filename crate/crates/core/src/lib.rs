//! Exact consistency checks and natural extensions for conditional lower
//! previsions on finite possibility spaces.
//!
//! The crate covers the weak consistency notions between convexity and
//! Williams coherence (internality, 1-AUL, 2-convexity, 2-coherence, their
//! n-term variants, convexity and coherence), the 2-convex and 2-coherent
//! natural extensions, the Generalized Bayes Rule family, Value-at-Risk
//! previsions and the desirable-gamble set associated with an assessment.
//! All arithmetic is exact.
//!
//! ```
//! use prevision::{checker, int, Assessment, ConditionalGamble, Gamble, Partition};
//!
//! let omega = Partition::new(["down", "up"]).unwrap();
//! let x = Gamble::from_ints(&omega, &[-1, 2]).unwrap();
//! let p = Assessment::from_entries(
//!     &omega,
//!     [
//!         (ConditionalGamble::unconditional(x.clone()), int(2)),
//!         (ConditionalGamble::unconditional(-&x), int(1)),
//!     ],
//! )
//! .unwrap();
//! assert!(checker::check_2convex(&p).is_satisfied());
//! assert!(!checker::check_2coherent(&p).is_satisfied());
//! ```

pub mod checker;
pub mod desirability;
pub mod error;
pub mod extension;
pub mod models;
pub mod rational;
pub mod solver;
pub mod space;

pub use checker::{ConsistencyClass, Mode, Order, Verdict, Violation, Witness, WitnessTerm};
pub use error::{Error, Result};
pub use extension::{Attainment, ExtensionReport};
pub use rational::{format_rational, int, parse_rational, rat, ExtendedValue, Rational};
pub use space::{
    gn_leq_events, gn_leq_gambles, restrict_inf, restrict_sup, Assessment, ConditionalGamble,
    Entry, Event, Gamble, Partition,
};
