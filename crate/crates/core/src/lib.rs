pub mod arith;
pub mod cli;
pub mod hyperbolic;
pub mod json;
pub mod proper;
pub mod sl2;
pub mod trace_embed;
pub mod tree;
pub mod valuation;
