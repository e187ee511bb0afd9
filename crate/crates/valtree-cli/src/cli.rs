//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "valtree", version, about = "Centered valuations on Q[[x,y]]")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit schema-versioned JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit Graphviz (dual graphs only).
    #[arg(long, global = true, conflicts_with = "json")]
    pub dot: bool,
    /// Initial series truncation for branches (overrides VALTREE_TRUNC).
    #[arg(long, global = true, value_name = "N")]
    pub trunc: Option<usize>,
    /// Worker threads for corpus-level work.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

/// Where curves come from: explicit branches and/or polynomials split into branches.
#[derive(Debug, Args, Default)]
pub struct Curves {
    /// A branch, e.g. "n=2; y = t^3" (repeatable).
    #[arg(long = "branch", value_name = "BRANCH")]
    pub branches: Vec<String>,
    /// A polynomial, split into its branches (repeatable).
    #[arg(long = "poly", value_name = "POLY")]
    pub polys: Vec<String>,
}

/// Where valuations come from: SKP files and/or branches.
#[derive(Debug, Args, Default)]
pub struct Points {
    /// An SKP document (skp.v1 JSON) (repeatable).
    #[arg(long = "skp", value_name = "FILE")]
    pub skps: Vec<PathBuf>,
    /// A branch, giving its curve valuation (repeatable).
    #[arg(long = "branch", value_name = "BRANCH")]
    pub branches: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// SKP of the curve valuation of each branch.
    Skp(Curves),
    /// Value of a polynomial at a valuation.
    Eval {
        #[command(flatten)]
        points: Points,
        /// The polynomial to evaluate.
        #[arg(long, value_name = "POLY")]
        poly: String,
    },
    /// Tree invariants (skewness, thinness, multiplicities, semigroup).
    Invariants(Points),
    /// Infimum of two valuations.
    Wedge(Points),
    /// Minimal desingularization of a curve.
    Desing(Curves),
    /// Minimal desingularization from equisingularity data.
    DesingEqui {
        /// An equisingularity document (equising.v1 JSON).
        #[arg(long, value_name = "FILE")]
        equi: PathBuf,
    },
    /// Eggers tree of a curve.
    Eggers(Curves),
    /// Characteristic exponents and semigroup generators of each branch.
    Classical(Curves),
    /// Tree measure and Zariski factorization of an ideal.
    IdealFactor {
        /// Comma-separated generators, e.g. "x^2, y^3".
        #[arg(long, value_name = "GENS")]
        ideal: String,
    },
    /// Integral closure membership of a polynomial in an ideal.
    Closure {
        #[arg(long, value_name = "GENS")]
        ideal: String,
        #[arg(long, value_name = "POLY")]
        poly: String,
    },
    /// Multiplicity e(I), or mixed multiplicity e(I, J) with two ideals.
    Mult {
        #[arg(long = "ideal", value_name = "GENS", num_args = 1, required = true)]
        ideals: Vec<String>,
    },
    /// Measures of the exceptional classes of the minimal desingularization.
    Classmeasure(Curves),
    /// Runs the acceptance suite.
    Selftest,
}
