//! Resumable exploration state.
//!
//! Layout (little endian): magic `QSLDCKP1`, format version `u32`, `n` as
//! `u32`, the signature as a length-prefixed `u32` list, the shard count,
//! then every visited shard as a length-prefixed sorted run of `u128`
//! bitvectors. The rest records the seed position, the finished components
//! and the component in progress.

use crate::error::{Error, Result};
use crate::tree::EdgeSet;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

const MAGIC: &[u8; 8] = b"QSLDCKP1";
const VERSION: u32 = 1;

/// Marker values for a degree that has not been seen yet, or that varied.
pub(crate) const DEGREE_UNSET: u32 = u32::MAX;
pub(crate) const DEGREE_MIXED: u32 = u32::MAX - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinishedComponent {
    pub size: u64,
    pub representative: EdgeSet,
    pub upright: u64,
    pub degree: u32,
    pub cube_dimension: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenComponent {
    pub size: u64,
    pub representative: EdgeSet,
    pub upright: u64,
    pub degree: u32,
    pub frontier: Vec<EdgeSet>,
    /// Kept only while the component is small enough to certify.
    pub members: Option<Vec<EdgeSet>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: u32,
    pub signature: Vec<u32>,
    pub shards: Vec<Vec<EdgeSet>>,
    /// Index of the next seed to try.
    pub seed_pos: u64,
    pub finished: Vec<FinishedComponent>,
    pub open: Option<OpenComponent>,
}

struct Writer(Vec<u8>);

impl Writer {
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u128(&mut self, v: u128) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn run(&mut self, v: &[EdgeSet]) {
        self.u64(v.len() as u64);
        for &x in v {
            self.u128(x);
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Checkpoint("truncated file".into()))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn u128(&mut self) -> Result<u128> {
        Ok(u128::from_le_bytes(self.take(16)?.try_into().unwrap()))
    }
    fn len(&mut self, width: usize) -> Result<usize> {
        let k = self.u64()? as usize;
        if k.saturating_mul(width) > self.buf.len() - self.pos {
            return Err(Error::Checkpoint("length field exceeds file size".into()));
        }
        Ok(k)
    }
    fn run(&mut self) -> Result<Vec<EdgeSet>> {
        let k = self.len(16)?;
        (0..k).map(|_| self.u128()).collect()
    }
}

impl Checkpoint {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer(MAGIC.to_vec());
        w.u32(VERSION);
        w.u32(self.n);
        w.u64(self.signature.len() as u64);
        for &a in &self.signature {
            w.u32(a);
        }
        w.u32(self.shards.len() as u32);
        for s in &self.shards {
            w.run(s);
        }
        w.u64(self.seed_pos);
        w.u64(self.finished.len() as u64);
        for c in &self.finished {
            w.u64(c.size);
            w.u128(c.representative);
            w.u64(c.upright);
            w.u32(c.degree);
            w.u32(c.cube_dimension.unwrap_or(u32::MAX));
        }
        match &self.open {
            None => w.u32(0),
            Some(c) => {
                w.u32(1);
                w.u64(c.size);
                w.u128(c.representative);
                w.u64(c.upright);
                w.u32(c.degree);
                w.run(&c.frontier);
                match &c.members {
                    None => w.u32(0),
                    Some(m) => {
                        w.u32(1);
                        w.run(m);
                    }
                }
            }
        }
        w.0
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        let mut r = Reader { buf, pos: 0 };
        if r.take(8)? != MAGIC {
            return Err(Error::Checkpoint("bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let n = r.u32()?;
        let k = r.len(4)?;
        let signature = (0..k).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
        let shard_count = r.u32()? as usize;
        let mut shards = Vec::new();
        for _ in 0..shard_count {
            let run = r.run()?;
            if run.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Checkpoint("shard run is not sorted".into()));
            }
            shards.push(run);
        }
        let seed_pos = r.u64()?;
        let k = r.len(44)?;
        let mut finished = Vec::with_capacity(k);
        for _ in 0..k {
            let size = r.u64()?;
            let representative = r.u128()?;
            let upright = r.u64()?;
            let degree = r.u32()?;
            let dim = r.u32()?;
            finished.push(FinishedComponent {
                size,
                representative,
                upright,
                degree,
                cube_dimension: (dim != u32::MAX).then_some(dim),
            });
        }
        let open = match r.u32()? {
            0 => None,
            1 => {
                let size = r.u64()?;
                let representative = r.u128()?;
                let upright = r.u64()?;
                let degree = r.u32()?;
                let frontier = r.run()?;
                let members = match r.u32()? {
                    0 => None,
                    1 => Some(r.run()?),
                    t => return Err(Error::Checkpoint(format!("bad member tag {t}"))),
                };
                Some(OpenComponent {
                    size,
                    representative,
                    upright,
                    degree,
                    frontier,
                    members,
                })
            }
            t => return Err(Error::Checkpoint(format!("bad component tag {t}"))),
        };
        if r.pos != buf.len() {
            return Err(Error::Checkpoint("trailing bytes".into()));
        }
        Ok(Checkpoint {
            n,
            signature,
            shards,
            seed_pos,
            finished,
            open,
        })
    }

    /// Writes through a temporary file so an interrupted write never leaves
    /// a truncated checkpoint behind.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io_err = |e: io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        f.write_all(&self.to_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let buf = fs::read(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        Self::from_bytes(&buf)
    }
}
