//! Build-or-load logic for coefficient tables.
//!
//! Resolution order: an explicit `--cache` file wins; otherwise, if
//! `PEDQ_CACHE_DIR` is set, auto-named files `<target>-<ring>-<order>.pedq`
//! under that directory are searched for any table of the right target and
//! ring whose order covers the request. Freshly computed tables are written
//! back to the resolved location.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use pedq_core::congruence::Target;
use pedq_core::eta::{ped2_series, ped_series, EtaQuotientSpec};
use pedq_core::series::{Ring, TruncatedSeries};

use crate::cache;

pub const CACHE_DIR_ENV: &str = "PEDQ_CACHE_DIR";

pub fn spec_for(target: Target) -> EtaQuotientSpec {
    match target {
        Target::Ped => EtaQuotientSpec::ped(),
        Target::Ped2 => EtaQuotientSpec::ped2(),
    }
}

pub fn compute_series(target: Target, order: usize, ring: Ring) -> TruncatedSeries {
    match target {
        Target::Ped => ped_series(order, ring),
        Target::Ped2 => ped2_series(order, ring),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Loaded(PathBuf),
    ComputedAndStored(PathBuf),
}

pub struct TableProvider {
    explicit: Option<PathBuf>,
    env_dir: Option<PathBuf>,
}

impl TableProvider {
    pub fn new(explicit: Option<PathBuf>) -> Self {
        let env_dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from);
        TableProvider { explicit, env_dir }
    }

    fn auto_name(target: Target, ring: Ring, order: usize) -> String {
        format!("{}-{}-{}.pedq", target.name(), ring.name(), order)
    }

    /// Scan the env cache directory for a usable table of this target/ring
    /// with order at least `order`.
    fn find_in_dir(&self, target: Target, ring: Ring, order: usize) -> Option<PathBuf> {
        let dir = self.env_dir.as_ref()?;
        let prefix = format!("{}-{}-", target.name(), ring.name());
        let mut best: Option<(u64, PathBuf)> = None;
        for entry in std::fs::read_dir(dir).ok()? {
            let path = entry.ok()?.path();
            let name = path.file_name()?.to_str()?;
            let rest = name.strip_prefix(&prefix)?.strip_suffix(".pedq")?;
            let file_order: u64 = rest.parse().ok()?;
            if file_order >= order as u64 && best.as_ref().map_or(true, |(b, _)| file_order < *b)
            {
                best = Some((file_order, path.clone()));
            }
        }
        best.map(|(_, p)| p)
    }

    /// Load a cached table covering `(target, ring, order)` if one exists;
    /// never computes.
    pub fn try_load(
        &self,
        target: Target,
        ring: Ring,
        order: usize,
    ) -> Option<(TruncatedSeries, Provenance)> {
        let spec = spec_for(target);
        if let Some(path) = &self.explicit {
            let (header, series) = cache::read_cache(path).ok()?;
            if cache::header_matches(&header, &spec, ring) && header.order >= order as u64 {
                return Some((series, Provenance::Loaded(path.clone())));
            }
            return None;
        }
        let path = self.find_in_dir(target, ring, order)?;
        let (header, series) = cache::read_cache(&path).ok()?;
        if cache::header_matches(&header, &spec, ring) && header.order >= order as u64 {
            return Some((series, Provenance::Loaded(path)));
        }
        None
    }

    /// Like [`TableProvider::obtain`], but accepts any ring able to answer
    /// residues mod `modulus`, preferring an existing cache; computes over
    /// the canonical `Ring::from_modulus(modulus)` ring when nothing is
    /// cached.
    pub fn obtain_covering(
        &self,
        target: Target,
        modulus: u8,
        order: usize,
    ) -> Result<(TruncatedSeries, Provenance)> {
        let preference = [Ring::Mod2, Ring::Mod3, Ring::Mod4, Ring::Mod8, Ring::Mod12, Ring::Mod24, Ring::Exact];
        for ring in preference {
            if ring.supports_modulus(modulus) {
                if let Some(found) = self.try_load(target, ring, order) {
                    return Ok(found);
                }
            }
        }
        let ring = Ring::from_modulus(modulus)
            .with_context(|| format!("no coefficient ring for modulus {modulus}"))?;
        self.obtain(target, ring, order)
    }

    /// Load a cached table covering `(target, ring, order)` or compute one,
    /// storing it at the resolved cache location if there is one.
    pub fn obtain(
        &self,
        target: Target,
        ring: Ring,
        order: usize,
    ) -> Result<(TruncatedSeries, Provenance)> {
        let spec = spec_for(target);
        if let Some(path) = &self.explicit {
            if path.exists() {
                let (header, series) = cache::read_cache(path)?;
                if !cache::header_matches(&header, &spec, ring) {
                    bail!(
                        "cache {} holds {} over {}, but {} over {} was requested; \
                         re-run `pedq compute` with a different --cache path",
                        path.display(),
                        header.spec_text,
                        header.ring.name(),
                        spec.canonical_text(),
                        ring.name()
                    );
                }
                if header.order < order as u64 {
                    bail!(
                        "cache {} has order {} but order {order} is required; \
                         re-run `pedq compute --order {order}` to regenerate it",
                        path.display(),
                        header.order
                    );
                }
                return Ok((series, Provenance::Loaded(path.clone())));
            }
            let series = build_logged(target, order, ring);
            cache::write_cache(path, &spec, &series)?;
            return Ok((series, Provenance::ComputedAndStored(path.clone())));
        }

        if let Some(path) = self.find_in_dir(target, ring, order) {
            let (header, series) = cache::read_cache(&path)
                .with_context(|| format!("auto-discovered cache {}", path.display()))?;
            if cache::header_matches(&header, &spec, ring) && header.order >= order as u64 {
                return Ok((series, Provenance::Loaded(path)));
            }
        }

        let series = build_logged(target, order, ring);
        if let Some(dir) = &self.env_dir {
            let path = dir.join(Self::auto_name(target, ring, order));
            cache::write_cache(&path, &spec, &series)?;
            return Ok((series, Provenance::ComputedAndStored(path)));
        }
        Ok((series, Provenance::Computed))
    }
}

fn build_logged(target: Target, order: usize, ring: Ring) -> TruncatedSeries {
    eprintln!("computing {} table over {} to order {order}...", target.name(), ring.name());
    let t = Instant::now();
    let series = compute_series(target, order, ring);
    eprintln!("done in {:.1?}", t.elapsed());
    series
}

/// Pretty provenance note for the diagnostic stream.
pub fn provenance_note(p: &Provenance) -> String {
    match p {
        Provenance::Computed => "computed in memory".to_string(),
        Provenance::Loaded(path) => format!("loaded from cache {}", path.display()),
        Provenance::ComputedAndStored(path) => format!("computed and cached at {}", path.display()),
    }
}

/// Parse a ring name as accepted by `--ring`.
pub fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse::<Ring>().map_err(|_| {
        format!(
            "unknown ring {s:?}; expected one of {}",
            Ring::ALL.map(|r| r.name()).join(", ")
        )
    })
}

/// Resolve `path` against an optional output directory argument.
pub fn out_or_stdout(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        None => {
            print!("{data}");
            Ok(())
        }
        Some(p) => std::fs::write(p, data).with_context(|| format!("writing {}", p.display())),
    }
}
