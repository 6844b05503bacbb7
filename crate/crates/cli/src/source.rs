use std::env;
use std::path::{Path, PathBuf};

use gapsieve::cycle::{build_primorial_cycle, read_cache, write_cache, GapCycle};
use gapsieve::primal::is_prime;

use crate::args::CycleSource;
use crate::{CliError, CliResult};

pub const CACHE_DIR_VAR: &str = "GAPSIEVE_CACHE_DIR";

fn cache_path(p: u64) -> Option<PathBuf> {
    let dir = env::var_os(CACHE_DIR_VAR)?;
    Some(Path::new(&dir).join(format!("g{p}.gapc")))
}

pub fn check_prime(p: u64) -> CliResult {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{p} is not prime")))
    }
}

/// G(p#), reused from the cache directory when possible.
pub fn primorial_cycle(p: u64) -> CliResult<GapCycle> {
    check_prime(p)?;
    let Some(path) = cache_path(p) else {
        return Ok(build_primorial_cycle(p)?);
    };
    if path.exists() {
        return Ok(read_cache(&path)?);
    }
    let cycle = build_primorial_cycle(p)?;
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    write_cache(&path, &cycle)?;
    Ok(cycle)
}

pub fn load_file(path: &Path) -> CliResult<GapCycle> {
    if !path.exists() {
        return Err(CliError::Usage(format!("cycle file {} not found", path.display())));
    }
    Ok(read_cache(path)?)
}

pub fn load(src: &CycleSource) -> CliResult<GapCycle> {
    match (&src.cycle, src.prime) {
        (Some(path), _) => load_file(path),
        (None, Some(p)) => primorial_cycle(p),
        (None, None) => Err(CliError::Usage("give --cycle FILE or --prime P".into())),
    }
}

/// Largest prime of a primorial cycle, or a usage error.
pub fn primorial_prime(cycle: &GapCycle) -> CliResult<u64> {
    let m = cycle.modulus();
    if !m.is_primorial() {
        return Err(CliError::Usage(format!("this needs a primorial cycle, got N = {m}")));
    }
    Ok(m.largest_factor().unwrap_or(2))
}
