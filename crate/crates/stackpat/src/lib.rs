//! Pattern-avoiding stack-sorting machines over permutations and
//! restricted growth words.

pub mod bijections;
pub mod enumeration;
pub mod oracles;
pub mod machine;
pub mod paths;
pub mod patterns;
pub mod words;
