//! Coefficient cache files: a versioned container for one truncated series.
//!
//! Layout (version 1, all integers little-endian; see docs/cache-format.md
//! for the normative description):
//!
//! ```text
//! offset  size  field
//!      0     8  magic "PEDQCOEF"
//!      8     4  u32 format version (= 1)
//!     12     4  u32 spec text length L
//!     16     L  canonical eta-quotient text, UTF-8 (e.g. "eta(1)^-1*eta(4)^1")
//!      +     1  ring tag: 0 = exact, otherwise the modulus (2,3,4,8,12,24)
//!      +     8  u64 order N
//!      +     *  coefficients c_0..c_N:
//!                 residue rings: N+1 bytes, one reduced residue each
//!                 exact: per coefficient an i32 sign-carrying magnitude
//!                        length, then that many little-endian bytes
//! ```

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::{BigInt, Sign};
use pedq_core::eta::EtaQuotientSpec;
use pedq_core::series::{Ring, TruncatedSeries};

pub const MAGIC: [u8; 8] = *b"PEDQCOEF";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub spec_text: String,
    pub ring: Ring,
    pub order: u64,
}

fn ring_tag(ring: Ring) -> u8 {
    ring.modulus().unwrap_or(0)
}

fn ring_from_tag(tag: u8) -> Option<Ring> {
    if tag == 0 {
        Some(Ring::Exact)
    } else {
        Ring::from_modulus(tag)
    }
}

/// Serialize a series, keyed by its generating eta quotient, to `path`.
pub fn write_cache(path: &Path, spec: &EtaQuotientSpec, series: &TruncatedSeries) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(&MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    let text = spec.canonical_text();
    buf.extend_from_slice(&(text.len() as u32).to_le_bytes());
    buf.extend_from_slice(text.as_bytes());
    buf.push(ring_tag(series.ring()));
    buf.extend_from_slice(&(series.order() as u64).to_le_bytes());
    if let Some(res) = series.residues() {
        buf.extend_from_slice(res);
    } else {
        for c in series.exact_coeffs().unwrap() {
            let (sign, mag) = c.to_bytes_le();
            let len = mag.len() as i32;
            let len = if sign == Sign::Minus { -len } else { len };
            buf.extend_from_slice(&len.to_le_bytes());
            if sign != Sign::NoSign {
                buf.extend_from_slice(&mag);
            }
        }
    }
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating cache directory {}", dir.display()))?;
        }
    }
    fs::write(path, &buf).with_context(|| format!("writing cache {}", path.display()))?;
    Ok(())
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.data.len() {
            bail!("cache truncated: needed {n} bytes at offset {}", self.pos);
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn i32(&mut self) -> Result<i32> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

/// Read and validate a cache file.
pub fn read_cache(path: &Path) -> Result<(CacheHeader, TruncatedSeries)> {
    let mut data = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut data))
        .with_context(|| format!("reading cache {}", path.display()))?;
    let mut r = Reader { data: &data, pos: 0 };

    if r.take(8)? != MAGIC {
        bail!("{} is not a pedq coefficient cache (bad magic)", path.display());
    }
    let version = r.u32()?;
    if version != VERSION {
        bail!(
            "cache {} has format version {version}, this build reads version {VERSION}; \
             re-run `pedq compute` to regenerate it",
            path.display()
        );
    }
    let spec_len = r.u32()? as usize;
    let spec_text = std::str::from_utf8(r.take(spec_len)?)
        .context("cache spec text is not UTF-8")?
        .to_string();
    EtaQuotientSpec::parse(&spec_text)
        .map_err(|e| anyhow::anyhow!("cache spec text invalid: {e}"))?;
    let tag = r.take(1)?[0];
    let ring = ring_from_tag(tag)
        .with_context(|| format!("cache ring tag {tag} unknown"))?;
    let order = r.u64()?;
    let count = usize::try_from(order)
        .ok()
        .and_then(|o| o.checked_add(1))
        .context("cache order out of range")?;

    let series = if ring == Ring::Exact {
        let mut coeffs = Vec::with_capacity(count);
        for _ in 0..count {
            let len = r.i32()?;
            let mag = r.take(len.unsigned_abs() as usize)?;
            let sign = match len {
                0 => Sign::NoSign,
                l if l < 0 => Sign::Minus,
                _ => Sign::Plus,
            };
            coeffs.push(BigInt::from_bytes_le(sign, mag));
        }
        TruncatedSeries::from_exact(coeffs).map_err(|e| anyhow::anyhow!("{e}"))?
    } else {
        let res = r.take(count)?.to_vec();
        TruncatedSeries::from_residues(ring, res)
            .map_err(|e| anyhow::anyhow!("cache residues invalid: {e}"))?
    };
    if r.pos != data.len() {
        bail!("cache {} has {} trailing bytes", path.display(), data.len() - r.pos);
    }
    Ok((CacheHeader { spec_text, ring, order }, series))
}

/// Whether a cache header describes the same generating spec and ring.
pub fn header_matches(header: &CacheHeader, spec: &EtaQuotientSpec, ring: Ring) -> bool {
    header.spec_text == spec.canonical_text() && header.ring == ring
}
