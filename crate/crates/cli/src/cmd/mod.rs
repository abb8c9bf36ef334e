pub mod abelian;
pub mod mathieu;
pub mod se2;
pub mod verify;
