//! Binary cycle cache.
//!
//! Layout: `"GAPC"`, version byte, factor count byte, the factors as
//! ascending u64 LE, the gap count as u64 LE, then the gaps as u16 LE.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::GapCycle;
use crate::error::{CacheError, Error, Result};
use crate::primal::SquarefreeModulus;

const MAGIC: [u8; 4] = *b"GAPC";
const VERSION: u8 = 1;
const CHUNK_GAPS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheHeader {
    pub modulus: SquarefreeModulus,
    pub gap_count: u64,
}

impl CacheHeader {
    pub fn byte_len(&self) -> u64 {
        4 + 1 + 1 + 8 * self.modulus.factors().len() as u64 + 8
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let factors = self.modulus.factors();
        let nf = u8::try_from(factors.len())
            .map_err(|_| Error::InvalidArgument("more than 255 factors".into()))?;
        w.write_all(&MAGIC)?;
        w.write_all(&[VERSION, nf])?;
        for &q in factors {
            w.write_all(&q.to_le_bytes())?;
        }
        w.write_all(&self.gap_count.to_le_bytes())?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        read_exact(r, &mut magic)?;
        if magic != MAGIC {
            return Err(CacheError::BadMagic(magic).into());
        }
        let mut vb = [0u8; 2];
        read_exact(r, &mut vb)?;
        if vb[0] != VERSION {
            return Err(CacheError::Version(vb[0]).into());
        }
        let mut factors = Vec::with_capacity(vb[1] as usize);
        for _ in 0..vb[1] {
            factors.push(read_u64(r)?);
        }
        let modulus = SquarefreeModulus::from_factors(factors).map_err(|e| match e {
            Error::ModulusOverflow(_) | Error::NotPrime(_) | Error::InvalidArgument(_) => {
                Error::Cache(CacheError::BadFactors)
            }
            other => other,
        })?;
        let gap_count = read_u64(r)?;
        let expected = modulus.totient();
        if gap_count as u128 != expected {
            return Err(CacheError::CountMismatch {
                expected,
                found: gap_count,
            }
            .into());
        }
        Ok(CacheHeader { modulus, gap_count })
    }
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            Error::Cache(CacheError::Truncated)
        } else {
            Error::Io(e)
        }
    })
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    read_exact(r, &mut b)?;
    Ok(u64::from_le_bytes(b))
}

pub fn write_cache_to<W: Write>(cycle: &GapCycle, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    CacheHeader {
        modulus: cycle.modulus().clone(),
        gap_count: cycle.len() as u64,
    }
    .write_to(&mut w)?;
    let mut bytes = Vec::with_capacity(2 * CHUNK_GAPS);
    for chunk in cycle.gaps().chunks(CHUNK_GAPS) {
        bytes.clear();
        for &g in chunk {
            bytes.extend_from_slice(&g.to_le_bytes());
        }
        w.write_all(&bytes)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_cache(path: impl AsRef<Path>, cycle: &GapCycle) -> Result<()> {
    write_cache_to(cycle, File::create(path)?)
}

/// Streaming reader: validates the header up front and then hands out the
/// gap payload chunk by chunk.
#[derive(Debug)]
pub struct CacheReader<R> {
    header: CacheHeader,
    inner: R,
    remaining: u64,
    buf: Vec<u8>,
}

impl CacheReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Self::new(BufReader::with_capacity(1 << 20, File::open(path)?))
    }
}

impl<R: Read> CacheReader<R> {
    pub fn new(mut inner: R) -> Result<Self> {
        let header = CacheHeader::read_from(&mut inner)?;
        Ok(CacheReader {
            remaining: header.gap_count,
            header,
            inner,
            buf: Vec::new(),
        })
    }

    pub fn header(&self) -> &CacheHeader {
        &self.header
    }

    /// Fill `out` with the next batch of at most `max` gaps. Returns false
    /// once the payload is exhausted, after checking there is nothing left
    /// in the file.
    pub fn next_chunk(&mut self, out: &mut Vec<u16>, max: usize) -> Result<bool> {
        out.clear();
        if self.remaining == 0 {
            let mut rest = Vec::new();
            let n = self.inner.read_to_end(&mut rest)?;
            if n > 0 {
                return Err(CacheError::TrailingBytes(n as u64).into());
            }
            return Ok(false);
        }
        let take = (self.remaining.min(max.max(1) as u64)) as usize;
        self.buf.resize(2 * take, 0);
        read_exact(&mut self.inner, &mut self.buf)?;
        out.extend(
            self.buf
                .chunks_exact(2)
                .map(|b| u16::from_le_bytes([b[0], b[1]])),
        );
        self.remaining -= take as u64;
        Ok(true)
    }

    /// Read everything into an in-memory cycle.
    pub fn into_cycle(mut self) -> Result<GapCycle> {
        let mut gaps = Vec::with_capacity(self.header.gap_count as usize);
        let mut chunk = Vec::new();
        while self.next_chunk(&mut chunk, CHUNK_GAPS)? {
            gaps.extend_from_slice(&chunk);
        }
        Ok(GapCycle::from_parts(self.header.modulus, gaps))
    }
}

pub fn read_cache_from<R: Read>(r: R) -> Result<GapCycle> {
    CacheReader::new(r)?.into_cycle()
}

pub fn read_cache(path: impl AsRef<Path>) -> Result<GapCycle> {
    CacheReader::open(path)?.into_cycle()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::build_primorial_cycle;

    fn encode(cycle: &GapCycle) -> Vec<u8> {
        let mut out = Vec::new();
        write_cache_to(cycle, &mut out).unwrap();
        out
    }

    fn cache_err(bytes: &[u8]) -> CacheError {
        match read_cache_from(bytes) {
            Err(Error::Cache(e)) => e,
            other => panic!("expected a cache error, got {other:?}"),
        }
    }

    #[test]
    fn layout_of_g6() {
        let bytes = encode(&build_primorial_cycle(3).unwrap());
        // two factors, two gaps
        assert_eq!(bytes.len(), 4 + 1 + 1 + 2 * 8 + 8 + 2 * 2);
        assert_eq!(&bytes[..6], b"GAPC\x01\x02");
        assert_eq!(&bytes[6..14], &2u64.to_le_bytes());
        assert_eq!(&bytes[bytes.len() - 4..], &[4, 0, 2, 0]);
    }

    #[test]
    fn round_trip() {
        for p in [2, 3, 5, 7, 11] {
            let g = build_primorial_cycle(p).unwrap();
            assert_eq!(read_cache_from(&encode(&g)[..]).unwrap(), g);
        }
    }

    #[test]
    fn rejects_corruption() {
        let good = encode(&build_primorial_cycle(5).unwrap());

        let mut bad = good.clone();
        bad[3] = b'X';
        assert_eq!(cache_err(&bad), CacheError::BadMagic(*b"GAPX"));

        let mut bad = good.clone();
        bad[4] = 2;
        assert_eq!(cache_err(&bad), CacheError::Version(2));

        assert_eq!(cache_err(&good[..good.len() - 1]), CacheError::Truncated);
        assert_eq!(cache_err(&good[..10]), CacheError::Truncated);

        let mut bad = good.clone();
        bad.extend_from_slice(&[0, 0, 0]);
        assert_eq!(cache_err(&bad), CacheError::TrailingBytes(3));

        let mut bad = good.clone();
        bad[6..14].copy_from_slice(&4u64.to_le_bytes());
        assert_eq!(cache_err(&bad), CacheError::BadFactors);

        let mut bad = good.clone();
        let at = 6 + 3 * 8;
        bad[at..at + 8].copy_from_slice(&9u64.to_le_bytes());
        assert_eq!(
            cache_err(&bad),
            CacheError::CountMismatch {
                expected: 8,
                found: 9
            }
        );
    }
}
