//! Monotone selection dynamics on finite games.
//!
//! The crate covers payoff evaluation, strict dominance and iterated
//! elimination, payoff-functional growth rules in continuous and discrete
//! time, constructions of games where dominated strategies survive, and the
//! diagnostics used to judge elimination from simulated trajectories.

pub mod diagnostics;
pub mod dominance;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod game;
pub mod link;
pub mod lp;
pub mod scenarios;

pub use error::{Error, Result};
pub use game::{payoff_mixed, payoff_pure, validate_simplex, Game, MixedStrategy};
