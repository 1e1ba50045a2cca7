//! Binary cache of minimal-vector lists under `DELONE_CACHE_DIR`.
//!
//! Layout: magic `DLNMINV1`, the SHA-256 of the lattice text, rank as `u32`,
//! vector count as `u64`, then `count·rank` little-endian `i32` coordinates.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use delone_core::lattice::Lattice;
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 8] = b"DLNMINV1";

pub fn lattice_hash(l: &Lattice) -> [u8; 32] {
    Sha256::digest(l.to_text().as_bytes()).into()
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("DELONE_CACHE_DIR").filter(|s| !s.is_empty()).map(PathBuf::from)
}

pub fn cache_path(dir: &Path, name: &str, l: &Lattice) -> PathBuf {
    let h = lattice_hash(l);
    let short: String = h[..6].iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{name}-min-{short}.bin"))
}

pub fn write_vectors(path: &Path, l: &Lattice, vs: &[Vec<i64>]) -> io::Result<()> {
    let rank = l.rank();
    let mut buf = Vec::with_capacity(52 + 4 * rank * vs.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&lattice_hash(l));
    buf.extend_from_slice(&(rank as u32).to_le_bytes());
    buf.extend_from_slice(&(vs.len() as u64).to_le_bytes());
    for v in vs {
        if v.len() != rank {
            return Err(io::Error::new(io::ErrorKind::InvalidInput, "vector length differs from rank"));
        }
        for &x in v {
            let x = i32::try_from(x).map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "coordinate exceeds i32"))?;
            buf.extend_from_slice(&x.to_le_bytes());
        }
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    // Write then rename so a concurrent reader never sees a partial file.
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(tmp, path)
}

/// `Ok(None)` when the file is missing or belongs to a different lattice.
pub fn read_vectors(path: &Path, l: &Lattice) -> io::Result<Option<Vec<Vec<i64>>>> {
    let mut buf = Vec::new();
    match fs::File::open(path) {
        Ok(mut f) => f.read_to_end(&mut buf)?,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let bad = || io::Error::new(io::ErrorKind::InvalidData, "truncated or corrupt vector cache");
    if buf.len() < 52 || &buf[..8] != MAGIC {
        return Err(bad());
    }
    if buf[8..40] != lattice_hash(l) {
        return Ok(None);
    }
    let rank = u32::from_le_bytes(buf[40..44].try_into().unwrap()) as usize;
    let count = u64::from_le_bytes(buf[44..52].try_into().unwrap()) as usize;
    if rank != l.rank() || buf.len() != 52 + 4 * rank * count {
        return Err(bad());
    }
    let coords: Vec<i64> = buf[52..].chunks_exact(4).map(|c| i32::from_le_bytes(c.try_into().unwrap()) as i64).collect();
    Ok(Some(coords.chunks(rank.max(1)).map(<[i64]>::to_vec).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use delone_core::catalog::an;

    #[test]
    fn round_trip_and_hash_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let l = an(2).unwrap();
        let path = cache_path(dir.path(), "a2", &l);
        let vs = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![1, -1], vec![-1, 1]];
        write_vectors(&path, &l, &vs).unwrap();
        assert_eq!(read_vectors(&path, &l).unwrap(), Some(vs));
        let other = an(3).unwrap();
        assert_eq!(read_vectors(&path, &other).unwrap(), None);
        assert_eq!(read_vectors(&dir.path().join("missing.bin"), &l).unwrap(), None);
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let l = an(2).unwrap();
        let path = dir.path().join("bad.bin");
        fs::write(&path, b"DLNMINV1short").unwrap();
        assert!(read_vectors(&path, &l).is_err());
    }
}
