//! The `LQGF` binary field format: magic `LQGF`, `u32` version 1, `u64 n`,
//! `f64` spacing, origin x and y, `u8` kind, `u64` cutoff, `u64` seed, then
//! `n^2` `f64` values row-major from the origin; all little-endian.

use std::io::{Read, Write};

use crate::error::{LabError, Result};
use crate::geometry::{GridGeometry, Point};
use crate::gff::{FieldGrid, FieldKind};

pub const MAGIC: [u8; 4] = *b"LQGF";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: u64 = 57;

/// Largest side accepted when reading, to refuse absurd allocations.
pub const MAX_SIDE: u64 = 1 << 15;

pub fn write_lqgf(mut w: impl Write, field: &FieldGrid) -> Result<()> {
    let g = &field.geometry;
    let mut buf = Vec::with_capacity(HEADER_LEN as usize + 8 * field.values.len());
    buf.extend_from_slice(&MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(g.n as u64).to_le_bytes());
    buf.extend_from_slice(&g.spacing.to_le_bytes());
    buf.extend_from_slice(&g.origin.re.to_le_bytes());
    buf.extend_from_slice(&g.origin.im.to_le_bytes());
    buf.push(field.kind.code());
    buf.extend_from_slice(&(field.cutoff as u64).to_le_bytes());
    buf.extend_from_slice(&field.seed.to_le_bytes());
    for v in &field.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take<const N: usize>(&mut self, what: &str) -> Result<[u8; N]> {
        let end = self.pos + N;
        if end > self.bytes.len() {
            return Err(format_err(self.bytes.len() as u64, format!("file ends inside {what}")));
        }
        let out = self.bytes[self.pos..end].try_into().expect("length checked");
        self.pos = end;
        Ok(out)
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(what)?))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(what)?))
    }
}

fn format_err(offset: u64, msg: impl Into<String>) -> LabError {
    LabError::Format { offset, msg: msg.into() }
}

pub fn read_lqgf(mut r: impl Read) -> Result<FieldGrid> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    decode_lqgf(&bytes)
}

pub fn decode_lqgf(bytes: &[u8]) -> Result<FieldGrid> {
    let mut c = Cursor { bytes, pos: 0 };
    let magic: [u8; 4] = c.take("magic")?;
    if magic != MAGIC {
        return Err(format_err(0, format!("bad magic {magic:02x?}, expected \"LQGF\"")));
    }
    let version = u32::from_le_bytes(c.take("version")?);
    if version != VERSION {
        return Err(format_err(4, format!("unsupported version {version}")));
    }
    let n = c.u64("side")?;
    if !(2..=MAX_SIDE).contains(&n) {
        return Err(format_err(8, format!("lattice side {n} outside [2, {MAX_SIDE}]")));
    }
    let spacing = c.f64("spacing")?;
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(format_err(16, format!("spacing {spacing} is not positive")));
    }
    let ox = c.f64("origin")?;
    let oy = c.f64("origin")?;
    if !(ox.is_finite() && oy.is_finite()) {
        return Err(format_err(24, "origin is not finite"));
    }
    let [code] = c.take::<1>("kind")?;
    let kind = FieldKind::from_code(code).ok_or_else(|| format_err(40, format!("unknown kind {code}")))?;
    let cutoff = c.u64("cutoff")?;
    let seed = c.u64("seed")?;
    let n = n as usize;
    let expected = HEADER_LEN as usize + 8 * n * n;
    if bytes.len() != expected {
        let at = bytes.len().min(expected) as u64;
        let msg = if bytes.len() < expected { "file ends inside the values" } else { "trailing bytes after the values" };
        return Err(format_err(at, format!("{msg}: {} bytes, expected {expected}", bytes.len())));
    }
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n * n {
        let offset = c.pos as u64;
        let v = c.f64("values")?;
        if !v.is_finite() {
            return Err(format_err(offset, format!("value {i} is {v}")));
        }
        values.push(v);
    }
    let geometry = GridGeometry::new(n, spacing, Point::new(ox, oy))?;
    FieldGrid::new(geometry, values, kind, cutoff as usize, seed)
}
