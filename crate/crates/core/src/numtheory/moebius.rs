//! Segmented Möbius sieve and its flat binary cache format.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::{Error, Result};

/// Magic bytes opening a sieve cache file.
pub const CACHE_MAGIC: &[u8; 4] = b"MU01";

const SEGMENT_LEN: u64 = 1 << 18;

/// `mu(n)` for `1 <= n <= limit`, stored as one signed byte per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    limit: u64,
    // values[i] = mu(i + 1)
    values: Vec<i8>,
}

impl std::fmt::Debug for MoebiusTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MoebiusTable")
            .field("limit", &self.limit)
            .finish_non_exhaustive()
    }
}

impl MoebiusTable {
    /// Sieves `mu(n)` up to `limit`.
    ///
    /// Segments are filled independently (in parallel) from the base primes
    /// below `sqrt(limit)`, so the result does not depend on the thread count.
    pub fn sieve(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::invalid("Möbius sieve limit must be at least 1"));
        }
        let len = usize::try_from(limit)
            .map_err(|_| Error::invalid(format!("sieve limit {limit} exceeds address space")))?;
        let base = base_primes(isqrt(limit));
        let mut values = vec![0i8; len];
        values
            .par_chunks_mut(SEGMENT_LEN as usize)
            .enumerate()
            .for_each(|(i, chunk)| {
                let lo = 1 + i as u64 * SEGMENT_LEN;
                fill_segment(lo, chunk, &base);
            });
        Ok(Self { limit, values })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `mu(n)`; panics when `n` is 0 or above the limit.
    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        assert!(n >= 1 && n <= self.limit, "mu({n}) outside table 1..={}", self.limit);
        self.values[(n - 1) as usize]
    }

    pub fn get(&self, n: u64) -> Option<i8> {
        (n >= 1 && n <= self.limit).then(|| self.values[(n - 1) as usize])
    }

    /// Raw values, `values()[i] == mu(i + 1)`.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Iterates `(n, mu(n))` for `n = 1..=limit`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i8)> + '_ {
        self.values.iter().enumerate().map(|(i, &m)| (i as u64 + 1, m))
    }

    /// Mertens function `M(n) = sum_{m <= n} mu(m)`.
    pub fn mertens(&self, n: u64) -> i64 {
        let n = n.min(self.limit) as usize;
        self.values[..n].iter().map(|&m| m as i64).sum()
    }

    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        let bytes: Vec<u8> = self.values.iter().map(|&m| m as u8).collect();
        w.write_all(CACHE_MAGIC)
            .and_then(|_| w.write_all(&self.limit.to_le_bytes()))
            .and_then(|_| w.write_all(&bytes))
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(path, e))
    }

    pub fn read_cache(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut r = BufReader::new(file);
        let bad = |reason: &str| Error::CacheFormat {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let mut header = [0u8; 12];
        r.read_exact(&mut header).map_err(|_| bad("truncated header"))?;
        if &header[..4] != CACHE_MAGIC {
            return Err(bad("bad magic bytes"));
        }
        let limit = u64::from_le_bytes(header[4..].try_into().expect("8 bytes"));
        if limit == 0 {
            return Err(bad("zero limit"));
        }
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes).map_err(|e| Error::io(path, e))?;
        if bytes.len() as u64 != limit {
            return Err(bad(&format!(
                "expected {limit} entries, found {}",
                bytes.len()
            )));
        }
        let values: Vec<i8> = bytes.into_iter().map(|b| b as i8).collect();
        if values.iter().any(|m| !(-1..=1).contains(m)) {
            return Err(bad("entry outside {-1, 0, 1}"));
        }
        Ok(Self { limit, values })
    }
}

/// Streams `mu` over `1..=limit` in fixed-size segments without
/// materialising the whole table. The callback receives the first `n`
/// of each segment and the segment's values.
pub fn for_each_segment<F>(limit: u64, mut f: F) -> Result<()>
where
    F: FnMut(u64, &[i8]),
{
    if limit == 0 {
        return Err(Error::invalid("Möbius sieve limit must be at least 1"));
    }
    let base = base_primes(isqrt(limit));
    let mut buf = vec![0i8; SEGMENT_LEN as usize];
    let mut lo = 1;
    while lo <= limit {
        let len = (limit - lo + 1).min(SEGMENT_LEN) as usize;
        fill_segment(lo, &mut buf[..len], &base);
        f(lo, &buf[..len]);
        lo += len as u64;
    }
    Ok(())
}

fn fill_segment(lo: u64, out: &mut [i8], base: &[u64]) {
    let hi = lo + out.len() as u64; // exclusive
    let mut rem: Vec<u64> = (lo..hi).collect();
    out.fill(1);
    for &p in base {
        if p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            out[i] = -out[i];
            rem[i] /= p;
            m += p;
        }
        let pp = p * p;
        let mut m = lo.div_ceil(pp) * pp;
        while m < hi {
            out[(m - lo) as usize] = 0;
            m += pp;
        }
    }
    // Whatever remains above 1 is a single prime factor > sqrt(limit).
    for (v, r) in out.iter_mut().zip(rem) {
        if r > 1 {
            *v = -*v;
        }
    }
}

fn base_primes(bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for i in 2..=bound {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= bound {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu_by_trial_division(mut n: u64) -> i8 {
        let mut sign = 1i8;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn definition_cases() {
        let t = MoebiusTable::sieve(100).unwrap();
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.mu(2), -1);
        assert_eq!(t.mu(4), 0);
        assert_eq!(t.mu(6), 1);
        assert_eq!(t.mu(30), -1);
        assert_eq!(t.mu(97), -1);
    }

    #[test]
    fn rejects_zero_limit() {
        assert!(matches!(
            MoebiusTable::sieve(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn limit_one_and_two() {
        assert_eq!(MoebiusTable::sieve(1).unwrap().values(), &[1]);
        assert_eq!(MoebiusTable::sieve(2).unwrap().values(), &[1, -1]);
    }

    #[test]
    fn mertens_2000_matches_trial_division() {
        let t = MoebiusTable::sieve(2000).unwrap();
        let oracle: i64 = (1..=2000).map(|n| mu_by_trial_division(n) as i64).sum();
        assert_eq!(t.mertens(2000), oracle);
    }

    #[test]
    fn multiple_segments_agree_with_trial_division() {
        let limit = 3 * SEGMENT_LEN + 17;
        let t = MoebiusTable::sieve(limit).unwrap();
        for n in (1..=limit).step_by(997).chain(limit - 50..=limit) {
            assert_eq!(t.mu(n), mu_by_trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn streaming_matches_table() {
        let limit = SEGMENT_LEN + 1234;
        let t = MoebiusTable::sieve(limit).unwrap();
        let mut streamed = Vec::new();
        for_each_segment(limit, |lo, seg| {
            assert_eq!(lo as usize, streamed.len() + 1);
            streamed.extend_from_slice(seg);
        })
        .unwrap();
        assert_eq!(streamed, t.values());
    }

    #[test]
    fn cache_round_trip_and_header_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mu.bin");
        let t = MoebiusTable::sieve(50).unwrap();
        t.write_cache(&path).unwrap();
        let raw = std::fs::read(&path).unwrap();
        assert_eq!(&raw[..4], b"MU01");
        assert_eq!(u64::from_le_bytes(raw[4..12].try_into().unwrap()), 50);
        assert_eq!(raw.len(), 12 + 50);
        assert_eq!(raw[12 + 1] as i8, -1);
        assert_eq!(MoebiusTable::read_cache(&path).unwrap(), t);
    }

    #[test]
    fn cache_rejects_bad_magic_and_length() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.bin");
        std::fs::write(&path, b"MU02\x01\0\0\0\0\0\0\0\x01").unwrap();
        assert!(matches!(
            MoebiusTable::read_cache(&path),
            Err(Error::CacheFormat { .. })
        ));
        std::fs::write(&path, b"MU01\x05\0\0\0\0\0\0\0\x01").unwrap();
        assert!(matches!(
            MoebiusTable::read_cache(&path),
            Err(Error::CacheFormat { .. })
        ));
    }
}
