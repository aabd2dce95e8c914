pub mod boxdim;
pub mod check;
pub mod ifs;
pub mod simulate;
pub mod sojourn;
pub mod steinhaus;
