use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "semiring-lab", version, about = "Finite ai-semirings, identities and Kneser hypergraph searches")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Print one JSON document instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Wall-clock budget per search in ms (else SEMIRING_LAB_BUDGET_MS, else 600000)
    #[arg(long, global = true, value_name = "N")]
    pub budget_ms: Option<u64>,

    /// Node budget per homomorphism search
    #[arg(long, global = true, value_name = "N")]
    pub nodes: Option<u64>,

    /// Seed for every random choice
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    /// Length bound for isoterm searches and word corpora
    #[arg(long, global = true, value_name = "L")]
    pub max_len: Option<usize>,

    /// Hyperedge orderings in t_H: `single` or `all`
    #[arg(long, global = true, value_name = "MODE")]
    pub orderings: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct Source {
    /// Builtin algebra (S_7, S_53, M_2, B_2^1, B_0, Sigma_7); repeatable
    #[arg(long, value_name = "NAME")]
    pub builtin: Vec<String>,

    /// Algebra file; repeatable
    #[arg(long, value_name = "PATH")]
    pub file: Vec<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct Output {
    /// Also write the resulting algebra file here
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tables, orders, products, subalgebras, quotients, isomorphisms
    #[command(subcommand)]
    Alg(Alg),
    /// Identities over a finite algebra
    #[command(subcommand)]
    Term(TermCmd),
    /// Word semirings and max-plus truncations
    #[command(subcommand)]
    Word(WordCmd),
    /// Kneser hypergraphs and homomorphism search
    #[command(subcommand)]
    Kneser(KneserCmd),
    /// End-to-end experiments
    #[command(subcommand)]
    Exp(Exp),
    /// Acceptance suite
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Debug, Subcommand)]
pub enum Alg {
    /// Check the ai-semiring axioms
    Verify(Source),
    /// Natural order: covers, greatest and least elements
    Order(Source),
    /// Direct product of the given algebras, in order
    Product {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Subalgebra generated by comma-separated element names
    Subalg {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "ELEMS")]
        gens: String,
        #[command(flatten)]
        output: Output,
    },
    /// Collapse an ideal filter to one element
    Quotient {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "ELEMS")]
        ideal: String,
        #[command(flatten)]
        output: Output,
    },
    /// Search for an isomorphism between two algebras
    Iso(Source),
}

#[derive(Debug, Subcommand)]
pub enum TermCmd {
    /// Decide an identity `lhs = rhs` by exhaustion
    Satisfies {
        #[command(flatten)]
        source: Source,
        identity: String,
        /// Random trials to try when exhaustion is over budget
        #[arg(long, default_value_t = 0)]
        sample: u64,
    },
    /// Decide `u ≼ v`, that is `u + v = v`
    Preceq {
        #[command(flatten)]
        source: Source,
        u: String,
        v: String,
    },
    /// Bounded search for a word below `w`
    Isoterm {
        #[command(flatten)]
        source: Source,
        word: String,
    },
    /// Parse and normalize a term or identity
    Parse { text: String },
}

#[derive(Debug, Subcommand)]
pub enum WordCmd {
    /// Flat word semiring S(W) or M(W)
    Flat {
        words: String,
        #[arg(long)]
        commutative: bool,
        /// Adjoin an identity element
        #[arg(long)]
        identity: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Divisibility semiring S_c*(W) or M_c*(W)
    Divis {
        words: String,
        #[arg(long)]
        identity: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Max-plus naturals truncated at k
    Maxplus {
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// S with an absorbing element adjoined
    Sinfty {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum KneserCmd {
    /// Build H(k, m)
    Build { k: usize, m: usize },
    /// The terms t_H and q_H of H(k, m)
    Terms { k: usize, m: usize },
    /// Search for a homomorphism H(k, m) -> H(k, n)
    Hom { k: usize, m: usize, n: usize },
    /// The block homomorphism H(k, m) -> H(k, n) for m dividing n
    Blockhom { k: usize, m: usize, n: usize },
}

#[derive(Debug, Subcommand)]
pub enum Exp {
    /// Build A(k, p) and check its power structure
    Akp { k: usize, p: usize },
    /// Build the identity sigma(k, q)
    Sigma { k: usize, q: usize },
    /// sigma(k, q) fails on A(k, q) under the subset assignment
    Witness { k: usize, q: usize },
    /// Decide sigma(k, q) on A(k, p) through homomorphism search
    Reduce {
        k: usize,
        p: usize,
        q: usize,
        /// Random trials when the search runs out of budget
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Rebuild S_c*(a1..an) as a quotient of a subalgebra of S_53^n
    Reconstruct { n: usize },
    /// Embed S_c*(a1..ak) into A(k, p)
    Embed { k: usize, p: usize },
    /// Occurrence, isoterm and chain checks on B_0
    B0 {
        #[arg(long, default_value_t = 3)]
        vars: usize,
    },
    /// Subdirect decomposition of max-plus naturals on an initial segment
    #[command(name = "maxplus-subdirect")]
    MaxplusSubdirect { k: usize },
    /// S^inf satisfies exactly the regular identities of S, on a seeded corpus
    Regularize {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 200)]
        size: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCmd {
    /// Run every acceptance criterion
    All,
}
