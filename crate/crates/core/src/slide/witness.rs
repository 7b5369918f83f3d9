//! Per-subcube signature fingerprints and the disconnection witness for
//! strictly reducible signatures.

use crate::cube::{extract, from_list, to_list, Vertex, MAX_DIM};
use crate::error::{Error, Result};
use crate::section::find_section;
use crate::signature::{is_signature, ClassKind, Signature};
use crate::tree::{rank_in, SpanningTree};
use serde::{Deserialize, Serialize};

/// `X ↦ sig(T(R, X))` for a tree reducing over `R`. `parts[k]` is the
/// signature of the part at `X = deposit(k, R)`, in the local coordinates of
/// the directions outside `R`. Slides never change it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "FingerprintJson", try_from = "FingerprintJson")]
pub struct Fingerprint {
    pub r: Vertex,
    pub parts: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FingerprintJson {
    r: Vec<usize>,
    parts: Vec<PartJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PartJson {
    x: Vec<usize>,
    signature: Vec<u32>,
}

impl From<Fingerprint> for FingerprintJson {
    fn from(f: Fingerprint) -> Self {
        FingerprintJson {
            r: to_list(f.r),
            parts: f
                .subsets()
                .zip(&f.parts)
                .map(|(x, s)| PartJson {
                    x: to_list(x),
                    signature: s.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<FingerprintJson> for Fingerprint {
    type Error = Error;

    fn try_from(j: FingerprintJson) -> Result<Self> {
        let r = from_list(&j.r, MAX_DIM)?;
        let mut f = Fingerprint {
            r,
            parts: vec![Vec::new(); 1 << r.count_ones()],
        };
        if j.parts.len() != f.parts.len() {
            return Err(Error::MalformedDecomposition(format!(
                "{} fingerprint parts for |R| = {}",
                j.parts.len(),
                r.count_ones()
            )));
        }
        for p in j.parts {
            let x = from_list(&p.x, MAX_DIM)?;
            if x & !r != 0 {
                return Err(Error::MalformedDecomposition("fingerprint subset outside R".into()));
            }
            f.parts[extract(x, r) as usize] = p.signature;
        }
        Ok(f)
    }
}

impl Fingerprint {
    /// The subsets `X ⊆ R` in the order of `parts`.
    pub fn subsets(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.parts.len() as u32).map(move |k| crate::cube::deposit(k, self.r))
    }

    pub fn get(&self, x: Vertex) -> &[u32] {
        &self.parts[extract(x, self.r) as usize]
    }

    /// Whether every part has the same signature.
    pub fn is_uniform(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }
}

/// The fingerprint of `T` over `R`.
pub fn subtree_fingerprint(t: &SpanningTree, r: Vertex) -> Result<Fingerprint> {
    let d = t.decompose(r)?;
    Ok(Fingerprint {
        r,
        parts: d.part_signatures(),
    })
}

/// Two trees with the same strictly reducible signature whose fingerprints
/// over `r` differ, so no slide path joins them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub signature: Signature,
    #[serde(with = "mask_list")]
    pub r: Vertex,
    #[serde(with = "mask_list")]
    pub x: Vertex,
    #[serde(with = "mask_list")]
    pub y: Vertex,
    /// The local signatures substituted at `x` and `y` when all parts of
    /// the starting tree agreed.
    pub replaced: Option<(Vec<u32>, Vec<u32>)>,
    pub first: SpanningTree,
    pub second: SpanningTree,
    pub first_fingerprint: Fingerprint,
    pub second_fingerprint: Fingerprint,
}

mod mask_list {
    use crate::cube::{from_list, to_list, Vertex, MAX_DIM};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vertex, s: S) -> Result<S::Ok, S::Error> {
        to_list(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vertex, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        from_list(&items, MAX_DIM).map_err(serde::de::Error::custom)
    }
}

impl Witness {
    pub fn separated(&self) -> bool {
        self.first.signature() == self.signature
            && self.second.signature() == self.signature
            && self.first_fingerprint != self.second_fingerprint
    }
}

/// Builds a witness pair following the constructive proof: take a tree with
/// signature `S`; if two of its parts over `R = [r]` differ, move a
/// differing part to `Y`, otherwise replace the parts at `X = ∅` and `Y` by
/// trees with signatures `U₁`, `U₂`. The second tree exchanges the parts at
/// `X` and `Y`.
pub fn disconnection_witness(sig: &Signature) -> Result<Witness> {
    let class = sig.classify();
    if class.kind != ClassKind::StrictlyReducible {
        return Err(Error::NotStrictlyReducible(sig.entries().to_vec()));
    }
    let canon = sig.canonical();
    let s = class.unsaturated_len;
    let rr = class
        .reducing_prefix_sizes
        .iter()
        .copied()
        .filter(|&t| t < s)
        .max()
        .expect("a strictly reducible signature has a reducing prefix inside its unsaturated part");
    let r = canon.prefix_mask(rr);
    let x: Vertex = 0;
    let y: Vertex = 1 << r.trailing_zeros();
    let (kx, ky) = (extract(x, r) as usize, extract(y, r) as usize);

    let base = find_section(sig, &[])?
        .expect("every signature has an upright tree")
        .to_tree()?;
    let mut d = base.decompose(r)?;
    let sigs = d.part_signatures();
    let mut replaced = None;
    if let Some(z) = (0..sigs.len()).find(|&k| sigs[k] != sigs[kx]) {
        d.parts.swap(ky, z);
    } else {
        let free = sig.n() - rr;
        let full_free = ((1u32 << sig.n()) - 1) & !r;
        let p = rank_in(full_free, canon.order[rr]);
        let q = rank_in(full_free, canon.order[rr + 1]);
        let mut u1 = sigs[kx].clone();
        let mut u2 = sigs[kx].clone();
        u1[p] -= 1;
        u1[q] += 1;
        u2[p] += 1;
        u2[q] -= 1;
        for u in [&u1, &u2] {
            let wide: Vec<u64> = u.iter().map(|&a| a as u64).collect();
            if !is_signature(&wide) {
                return Err(Error::InvalidSignature {
                    entries: wide,
                    reason: "replacement part is not a signature".into(),
                });
            }
        }
        let build = |u: &[u32]| -> Result<SpanningTree> {
            let su = Signature::new(u.to_vec())?;
            find_section(&su, &[])?
                .expect("every signature has an upright tree")
                .to_tree()
        };
        d.parts[kx] = build(&u1)?;
        d.parts[ky] = build(&u2)?;
        debug_assert_eq!(d.parts[kx].n(), free);
        replaced = Some((u1, u2));
    }
    let first = d.recompose()?;
    d.parts.swap(kx, ky);
    let second = d.recompose()?;
    Ok(Witness {
        signature: sig.clone(),
        r,
        x,
        y,
        replaced,
        first_fingerprint: subtree_fingerprint(&first, r)?,
        second_fingerprint: subtree_fingerprint(&second, r)?,
        first,
        second,
    })
}
