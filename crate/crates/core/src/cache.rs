//! On-disk persistence for sieved coefficient tables.
//!
//! Layout, all integers little-endian:
//!   "DZSV" | version u16 | spec_len u16 | spec bytes | X u64
//!   | three arrays (ideal count, totient sum, Moebius sum), each as
//!     width u8 (8 or 16) followed by X values of that width
//!   | CRC32 (IEEE) of everything before it.
//! Round-trips must be bit-exact; any mismatch refuses the file.

use crate::error::{Error, Result};
use crate::sieve::{CoeffKind, CoeffTable, CoeffValues};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

pub const MAGIC: [u8; 4] = *b"DZSV";
pub const VERSION: u16 = 1;

/// Streaming IEEE CRC32 (reflected, polynomial 0xEDB88320).
struct Crc32 {
    table: [u32; 256],
    state: u32,
}

impl Crc32 {
    fn new() -> Crc32 {
        let mut table = [0u32; 256];
        for (i, slot) in table.iter_mut().enumerate() {
            let mut c = i as u32;
            for _ in 0..8 {
                c = if c & 1 != 0 {
                    0xEDB8_8320 ^ (c >> 1)
                } else {
                    c >> 1
                };
            }
            *slot = c;
        }
        Crc32 {
            table,
            state: 0xFFFF_FFFF,
        }
    }

    fn update(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.state = self.table[((self.state ^ b as u32) & 0xFF) as usize] ^ (self.state >> 8);
        }
    }

    fn finish(&self) -> u32 {
        self.state ^ 0xFFFF_FFFF
    }
}

struct CheckedWriter<W: Write> {
    inner: W,
    crc: Crc32,
}

impl<W: Write> CheckedWriter<W> {
    fn put(&mut self, bytes: &[u8]) -> Result<()> {
        self.crc.update(bytes);
        self.inner.write_all(bytes)?;
        Ok(())
    }
}

struct CheckedReader<R: Read> {
    inner: R,
    crc: Crc32,
}

impl<R: Read> CheckedReader<R> {
    fn take(&mut self, buf: &mut [u8]) -> Result<()> {
        self.inner.read_exact(buf)?;
        self.crc.update(buf);
        Ok(())
    }

    fn take_array<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut buf = [0u8; N];
        self.take(&mut buf)?;
        Ok(buf)
    }
}

/// Write the three tables of one field at one bound.
pub fn write_tables(path: &Path, tables: &[CoeffTable; 3]) -> Result<()> {
    let spec = tables[0].field_spec.as_bytes();
    let bound = tables[0].bound;
    for (t, kind) in tables.iter().zip(CoeffKind::ALL) {
        assert_eq!(t.kind, kind, "tables must be in canonical order");
        assert_eq!(t.bound, bound);
        assert_eq!(t.field_spec, tables[0].field_spec);
    }
    if spec.len() > u16::MAX as usize {
        return Err(Error::Cache("field spec too long".into()));
    }
    let mut w = CheckedWriter {
        inner: BufWriter::new(std::fs::File::create(path)?),
        crc: Crc32::new(),
    };
    w.put(&MAGIC)?;
    w.put(&VERSION.to_le_bytes())?;
    w.put(&(spec.len() as u16).to_le_bytes())?;
    w.put(spec)?;
    w.put(&bound.to_le_bytes())?;
    for t in tables {
        match t.values() {
            CoeffValues::I64(v) => {
                w.put(&[8u8])?;
                for &x in v {
                    w.put(&x.to_le_bytes())?;
                }
            }
            CoeffValues::I128(v) => {
                w.put(&[16u8])?;
                for &x in v {
                    w.put(&x.to_le_bytes())?;
                }
            }
        }
    }
    let crc = w.crc.finish();
    w.inner.write_all(&crc.to_le_bytes())?;
    w.inner.flush()?;
    Ok(())
}

/// Read back a table file, verifying magic, version, and checksum.
pub fn read_tables(path: &Path) -> Result<[CoeffTable; 3]> {
    let mut r = CheckedReader {
        inner: BufReader::new(std::fs::File::open(path)?),
        crc: Crc32::new(),
    };
    let magic: [u8; 4] = r.take_array()?;
    if magic != MAGIC {
        return Err(Error::Cache("bad magic; not a table cache file".into()));
    }
    let version = u16::from_le_bytes(r.take_array()?);
    if version != VERSION {
        return Err(Error::Cache(format!(
            "cache version {version} != supported {VERSION}; delete the file and resieve"
        )));
    }
    let spec_len = u16::from_le_bytes(r.take_array()?) as usize;
    let mut spec_bytes = vec![0u8; spec_len];
    r.take(&mut spec_bytes)?;
    let spec = String::from_utf8(spec_bytes)
        .map_err(|_| Error::Cache("field spec is not UTF-8".into()))?;
    let bound = u64::from_le_bytes(r.take_array()?);
    if bound == 0 || bound > (1u64 << 33) {
        return Err(Error::Cache(format!("implausible bound {bound}")));
    }
    let mut out = Vec::with_capacity(3);
    for kind in CoeffKind::ALL {
        let width = r.take_array::<1>()?[0];
        let values = match width {
            8 => {
                let mut v = Vec::with_capacity(bound as usize);
                for _ in 0..bound {
                    v.push(i64::from_le_bytes(r.take_array()?));
                }
                CoeffValues::I64(v)
            }
            16 => {
                let mut v = Vec::with_capacity(bound as usize);
                for _ in 0..bound {
                    v.push(i128::from_le_bytes(r.take_array()?));
                }
                CoeffValues::I128(v)
            }
            w => return Err(Error::Cache(format!("bad array width tag {w}"))),
        };
        out.push(CoeffTable::from_parts(spec.clone(), bound, kind, values));
    }
    let computed = r.crc.finish();
    let stored = {
        let mut buf = [0u8; 4];
        r.inner.read_exact(&mut buf)?;
        u32::from_le_bytes(buf)
    };
    if computed != stored {
        return Err(Error::Cache(format!(
            "checksum mismatch: stored {stored:08x}, computed {computed:08x}"
        )));
    }
    let mut trailing = [0u8; 1];
    if r.inner.read(&mut trailing)? != 0 {
        return Err(Error::Cache("trailing bytes after checksum".into()));
    }
    Ok([
        out.remove(0),
        out.remove(0),
        out.remove(0),
    ])
}

/// Canonical cache file name for one field/bound pair.
pub fn cache_file_name(field_spec: &str, bound: u64) -> String {
    let safe: String = field_spec
        .chars()
        .map(|c| if c == ':' || c == ',' { '_' } else { c })
        .collect();
    format!("{safe}-X{bound}.dzsv")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::sieve::build_all_tables;

    #[test]
    fn crc32_reference_vector() {
        // CRC32("123456789") = 0xCBF43926
        let mut c = Crc32::new();
        c.update(b"123456789");
        assert_eq!(c.finish(), 0xCBF4_3926);
    }

    #[test]
    fn round_trip_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let field = NumberField::quadratic(-1).unwrap();
        let tables = build_all_tables(&field, 500).unwrap();
        let path = dir.path().join(cache_file_name(&field.spec_string(), 500));
        write_tables(&path, &tables).unwrap();
        let back = read_tables(&path).unwrap();
        assert_eq!(tables, back);
        // the byte stream itself is deterministic
        let bytes = std::fs::read(&path).unwrap();
        write_tables(&path, &back).unwrap();
        assert_eq!(bytes, std::fs::read(&path).unwrap());
    }

    #[test]
    fn corruption_detected() {
        let dir = tempfile::tempdir().unwrap();
        let field = NumberField::rational();
        let tables = build_all_tables(&field, 100).unwrap();
        let path = dir.path().join("t.dzsv");
        write_tables(&path, &tables).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0x40;
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_tables(&path), Err(Error::Cache(_))));
    }

    #[test]
    fn version_mismatch_refused() {
        let dir = tempfile::tempdir().unwrap();
        let field = NumberField::rational();
        let tables = build_all_tables(&field, 10).unwrap();
        let path = dir.path().join("t.dzsv");
        write_tables(&path, &tables).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[4] = 99; // version field
        std::fs::write(&path, &bytes).unwrap();
        let err = read_tables(&path).unwrap_err();
        assert!(err.to_string().contains("version"));
    }

    #[test]
    fn bad_magic_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.dzsv");
        std::fs::write(&path, b"NOPE").unwrap();
        assert!(read_tables(&path).is_err());
    }
}
