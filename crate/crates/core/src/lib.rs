pub mod numerics;
pub mod machines;
pub mod simplex;
pub mod engine;
