//! Modular arithmetic substrate: everything here works on 64-bit residues
//! normalized into `0..m`.

mod context;
mod modular;
mod prime;

pub use context::{
    build_context, find_primitive_root, DlogMode, PrimeContext, DEFAULT_TABLE_THRESHOLD,
};
pub use modular::{gcd, mod_inverse, mulmod, normalize, powmod};
pub use prime::{factorize, is_prime, multiplicative_invariants, Factorization};

pub(crate) use modular::{mulmod_unchecked, powmod_unchecked};

pub fn divisors(f: &Factorization) -> Vec<u64> {
    f.divisors()
}
