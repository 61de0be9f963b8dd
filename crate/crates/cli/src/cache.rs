//! On-disk memo for `tables hn` and `tables asm-ruler`.
//!
//! Layout (little endian): magic `GLABMEMO`, format version `u32`, tool
//! version as `u16` length plus bytes, kind byte, then the payload. Files
//! whose header does not match the running tool are ignored.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use grundylab::closed_forms::AsmRulerTable;
use grundylab::Nimber;

const MAGIC: &[u8; 8] = b"GLABMEMO";
pub const FORMAT_VERSION: u32 = 1;
const KIND_HN: u8 = 1;
const KIND_ASM_RULER: u8 = 2;

fn header(kind: u8) -> Vec<u8> {
    let version = env!("CARGO_PKG_VERSION").as_bytes();
    let mut out = MAGIC.to_vec();
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(version.len() as u16).to_le_bytes());
    out.extend_from_slice(version);
    out.push(kind);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.bytes.len() < n {
            return None;
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }

    fn u64(&mut self) -> Option<u64> {
        Some(u64::from_le_bytes(self.take(8)?.try_into().ok()?))
    }
}

/// Payload of a file with a matching header.
fn read(path: &Path, kind: u8) -> Option<Vec<u8>> {
    let bytes = fs::read(path).ok()?;
    let head = header(kind);
    bytes.strip_prefix(head.as_slice()).map(<[u8]>::to_vec)
}

fn write(path: &Path, kind: u8, payload: &[u8]) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut bytes = header(kind);
    bytes.extend_from_slice(payload);
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(tmp, path)
}

pub fn hn_path(dir: &Path) -> PathBuf {
    dir.join("hn.bin")
}

pub fn asm_ruler_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("asm-ruler-{n}.bin"))
}

pub fn load_hn(dir: &Path) -> Option<Vec<Nimber>> {
    let payload = read(&hn_path(dir), KIND_HN)?;
    let mut r = Reader { bytes: &payload };
    let count = r.u32()?;
    let values = (0..count)
        .map(|_| r.u64().map(Nimber))
        .collect::<Option<Vec<_>>>()?;
    r.bytes.is_empty().then_some(values)
}

pub fn store_hn(dir: &Path, values: &[Nimber]) -> io::Result<()> {
    let mut payload = (values.len() as u32).to_le_bytes().to_vec();
    for v in values {
        payload.extend_from_slice(&v.get().to_le_bytes());
    }
    write(&hn_path(dir), KIND_HN, &payload)
}

pub fn load_asm_ruler(dir: &Path, n: usize) -> Option<AsmRulerTable> {
    let payload = read(&asm_ruler_path(dir, n), KIND_ASM_RULER)?;
    let mut r = Reader { bytes: &payload };
    if r.u32()? as usize != n || n < 2 {
        return None;
    }
    let mut rows = Vec::with_capacity(n - 1);
    for s in 0..n - 1 {
        rows.push(
            (0..=s)
                .map(|_| r.u64().map(Nimber))
                .collect::<Option<Vec<_>>>()?,
        );
    }
    if !r.bytes.is_empty() {
        return None;
    }
    AsmRulerTable::from_rows(n, rows).ok()
}

pub fn store_asm_ruler(dir: &Path, table: &AsmRulerTable) -> io::Result<()> {
    let mut payload = (table.n as u32).to_le_bytes().to_vec();
    for (_, _, g) in table.entries() {
        payload.extend_from_slice(&g.get().to_le_bytes());
    }
    write(&asm_ruler_path(dir, table.n), KIND_ASM_RULER, &payload)
}
