//! Prime generation, primorials and generalized totients.

mod modulus;
mod sieve;

pub use modulus::{
    distinct_prime_factors, phi_i, primorial, radical_of_even, SquarefreeModulus,
};
pub use sieve::{
    is_prime, next_prime, prev_prime, primes_in, PrimeStream, SieveConfig,
    DEFAULT_BLOCK_SIZE, DEFAULT_MEMORY_BUDGET, MAX_BOUND,
};
