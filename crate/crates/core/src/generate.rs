//! Seeded random instance generator for solver cross-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::table::{RowPattern, Symbol, Table};

/// Uniform n×m table over an alphabet of `sigma` symbols, reproducible
/// from the seed.
pub fn generate_table(seed: u64, n: usize, m: usize, sigma: usize) -> Result<Table> {
    if n == 0 || m == 0 {
        return Err(Error::Argument(format!(
            "table dimensions must be positive, got n={n}, m={m}"
        )));
    }
    if sigma == 0 {
        return Err(Error::Argument("alphabet size must be positive".into()));
    }
    let alphabet: Vec<Symbol> = (0..sigma)
        .map(|i| {
            let token = if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("t{i}")
            };
            Symbol::new(token)
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| {
            let entries = (0..m)
                .map(|_| alphabet[rng.random_range(0..sigma)].clone())
                .collect();
            RowPattern::new(entries)
        })
        .collect::<Result<_>>()?;
    Table::new(rows)
}
