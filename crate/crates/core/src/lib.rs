pub mod cli;
pub mod closure;
pub mod filtration;
pub mod groebner;
pub mod hilbert;
pub mod monomial;
pub mod poly;
pub mod simplicial;
pub mod sylvester;
