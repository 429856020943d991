//! PathORAM with a locally stored position map.
//!
//! Blocks are encryptions of `tag ∥ data`, tag 0 marking an empty slot. The
//! server holds a heap-ordered binary tree (root 0, children `2i+1`, `2i+2`);
//! each node is a bucket of `n_bkt` blocks.

mod soundness;

use serde::{Deserialize, Serialize};

pub use soundness::{check_minimal_soundness, path_locality_violations, run_trace, SoundnessReport, TraceEntry};

use crate::crypto::arith::{bit_len, ceil_log2};
use crate::crypto::prf::PrfBackend;
use crate::crypto::prng::PrngState;
use crate::crypto::skes::{Ciphertext, Goldreich, KeyedSkes, Skes};
use crate::crypto::SecretKey;
use crate::rng::{rng_for, stream, Rng};
use crate::{BitString, Error, Result};

pub type Block = Ciphertext;

pub const DEFAULT_N_MAX: usize = 1 << 16;

/// Source of leaf labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeafPrng {
    /// Blum-Micali over `Z_p^*` with generator `g`, seeded uniformly.
    BlumMicali { p: u64, g: u64 },
    /// Counter-mode ideal PRF under a random key.
    Secure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OramParams {
    /// Key length.
    pub n: usize,
    pub n_db: usize,
    pub n_dat: usize,
    pub n_bkt: usize,
    pub n_max: usize,
    /// Encryption randomness per block.
    pub r_bits: usize,
    pub prng: LeafPrng,
}

impl OramParams {
    pub fn new(n_db: usize, prng: LeafPrng) -> Self {
        Self {
            n: 16,
            n_db,
            n_dat: 4,
            n_bkt: 4,
            n_max: DEFAULT_N_MAX,
            r_bits: 32,
            prng,
        }
    }

    /// Tag width; tag 0 is reserved for empty blocks.
    pub fn n_tag(&self) -> usize {
        bit_len(self.n_db as u64)
    }

    pub fn n_tree(&self) -> usize {
        ceil_log2(self.n_db as u64).max(1)
    }

    pub fn n_blk(&self) -> usize {
        self.n_tag() + self.n_dat
    }

    fn validate(&self) -> Result<()> {
        if self.n_db == 0 || self.n_db > self.n_max {
            return Err(Error::Param(format!("n_db = {} outside 1..={}", self.n_db, self.n_max)));
        }
        if self.n_bkt == 0 || self.n_dat == 0 || self.n == 0 {
            return Err(Error::Param("n, n_dat and n_bkt must be positive".into()));
        }
        if self.n_blk() > 64 || self.r_bits == 0 || self.r_bits > 64 {
            return Err(Error::Param("block or randomness width exceeds 64 bits".into()));
        }
        Ok(())
    }

    fn scheme(&self) -> Goldreich {
        Goldreich {
            m: self.n_blk(),
            r_bits: self.r_bits,
            key_bits: self.n,
            backend: PrfBackend::Ideal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServerDb {
    n_tree: usize,
    n_bkt: usize,
    nodes: Vec<Vec<Block>>,
}

impl ServerDb {
    pub fn n_tree(&self) -> usize {
        self.n_tree
    }

    pub fn n_bkt(&self) -> usize {
        self.n_bkt
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn bucket(&self, node: usize) -> &[Block] {
        &self.nodes[node]
    }

    /// Direct access for fault injection.
    pub fn bucket_mut(&mut self, node: usize) -> &mut Vec<Block> {
        &mut self.nodes[node]
    }

    /// Node indices from the root to `leaf`.
    pub fn path(&self, leaf: u64) -> Vec<usize> {
        path_nodes(self.n_tree, leaf)
    }

    pub fn fetch_branch(&self, leaf: u64) -> Vec<Block> {
        self.path(leaf)
            .into_iter()
            .flat_map(|i| self.nodes[i].iter().cloned())
            .collect()
    }

    pub fn store_branch(&mut self, leaf: u64, blocks: Vec<Block>) -> Result<()> {
        let path = self.path(leaf);
        if blocks.len() != path.len() * self.n_bkt {
            return Err(Error::Param("uploaded branch has the wrong size".into()));
        }
        for (node, chunk) in path.into_iter().zip(blocks.chunks(self.n_bkt)) {
            self.nodes[node] = chunk.to_vec();
        }
        Ok(())
    }

    /// FNV-1a over the serialised tree.
    pub fn digest(&self) -> String {
        let mut h = Fnv::new();
        for bucket in &self.nodes {
            for b in bucket {
                h.write(b.to_bits().to_hex().as_bytes());
                h.write(b"|");
            }
            h.write(b"#");
        }
        h.hex()
    }
}

pub(crate) struct Fnv(u64);

impl Fnv {
    pub(crate) fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    pub(crate) fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub(crate) fn hex(&self) -> String {
        format!("{:016x}", self.0)
    }
}

pub(crate) fn path_nodes(n_tree: usize, leaf: u64) -> Vec<usize> {
    (0..=n_tree)
        .map(|d| ((1usize << d) - 1) + (leaf >> (n_tree - d)) as usize)
        .collect()
}

/// Deepest level shared by the paths to two leaves.
pub(crate) fn common_depth(n_tree: usize, a: u64, b: u64) -> usize {
    (0..=n_tree)
        .rev()
        .find(|&d| a >> (n_tree - d) == b >> (n_tree - d))
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub tag: u64,
    pub data: BitString,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Read,
    Write,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataRequest {
    pub op: Op,
    pub id: usize,
    pub data: Option<BitString>,
}

impl DataRequest {
    pub fn read(id: usize) -> Self {
        Self {
            op: Op::Read,
            id,
            data: None,
        }
    }

    pub fn write(id: usize, data: BitString) -> Self {
        Self {
            op: Op::Write,
            id,
            data: Some(data),
        }
    }
}

pub struct ClientState {
    params: OramParams,
    key: SecretKey,
    keyed: Box<dyn KeyedSkes>,
    position: Vec<u64>,
    stash: Vec<Record>,
    prng: PrngState,
    enc_rng: Rng,
    leaf_log: Vec<u64>,
    stash_log: Vec<usize>,
}

impl ClientState {
    pub fn params(&self) -> &OramParams {
        &self.params
    }

    pub fn key(&self) -> &SecretKey {
        &self.key
    }

    pub fn position(&self, id: usize) -> Option<u64> {
        id.checked_sub(1).and_then(|i| self.position.get(i)).copied()
    }

    pub fn stash(&self) -> &[Record] {
        &self.stash
    }

    /// Stash size after each access.
    pub fn stash_log(&self) -> &[usize] {
        &self.stash_log
    }

    /// Every truncated PRNG output, in consumption order.
    pub fn leaf_log(&self) -> &[u64] {
        &self.leaf_log
    }

    pub fn prng(&self) -> &PrngState {
        &self.prng
    }

    /// Decrypts a block into a record; malformed blocks abort.
    pub fn open_block(&self, b: &Block) -> Result<Record> {
        let plain = self
            .keyed
            .dec(b)
            .map_err(|e| Error::Soundness(format!("undecryptable block: {e}")))?;
        if plain.len() != self.params.n_blk() {
            return Err(Error::Soundness("block has the wrong width".into()));
        }
        let (tag, data) = plain.split(self.params.n_tag())?;
        let tag = tag.to_u64()?;
        if tag as usize > self.params.n_db {
            return Err(Error::Soundness(format!("tag {tag} exceeds n_db")));
        }
        Ok(Record { tag, data })
    }

    fn seal(&mut self, rec: &Record) -> Result<Block> {
        let plain = BitString::from_u64(rec.tag, self.params.n_tag())?.concat(&rec.data);
        self.keyed.enc(&plain, &mut self.enc_rng)
    }

    fn next_leaf(&mut self) -> u64 {
        let mask = (1u64 << self.params.n_tree()) - 1;
        let leaf = self.prng.next_bits(self.params.n_tag()) & mask;
        self.leaf_log.push(leaf);
        leaf
    }

    fn empty_record(&self) -> Record {
        Record {
            tag: 0,
            data: BitString::zeros(self.params.n_dat),
        }
    }
}

/// Adversarial view of one access.
#[derive(Debug, Clone)]
pub struct AccessPattern {
    pub pre: ServerDb,
    pub leaf: u64,
    pub down: Vec<Block>,
    pub up: Vec<Block>,
    pub post: ServerDb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessPatternJson {
    pub leaf: u64,
    pub down: Vec<String>,
    pub up: Vec<String>,
    pub pre_digest: String,
    pub post_digest: String,
}

impl AccessPattern {
    pub fn summary(&self) -> AccessPatternJson {
        let hex = |bs: &[Block]| bs.iter().map(|b| b.to_bits().to_hex()).collect();
        AccessPatternJson {
            leaf: self.leaf,
            down: hex(&self.down),
            up: hex(&self.up),
            pre_digest: self.pre.digest(),
            post_digest: self.post.digest(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.summary()).expect("summaries serialise")
    }
}

/// Client and server for `params`, all randomness derived from `seed`.
pub fn oram_init(params: &OramParams, seed: u64) -> Result<(ClientState, ServerDb)> {
    params.validate()?;
    let scheme = params.scheme();
    let key = scheme.keygen(&mut rng_for(seed, stream::KEY));
    let keyed = scheme.load(&key)?;
    let mut prng_rng = rng_for(seed, stream::PRNG);
    let prng = match params.prng {
        LeafPrng::BlumMicali { p, g } => PrngState::blum_micali_random(p, g, &mut prng_rng)?,
        LeafPrng::Secure => PrngState::counter_prf(rand::Rng::gen(&mut prng_rng)),
    };
    let mut client = ClientState {
        params: params.clone(),
        key,
        keyed,
        position: Vec::with_capacity(params.n_db),
        stash: Vec::new(),
        prng,
        enc_rng: rng_for(seed, stream::ENCRYPTION),
        leaf_log: Vec::new(),
        stash_log: Vec::new(),
    };
    for _ in 0..params.n_db {
        let leaf = client.next_leaf();
        client.position.push(leaf);
    }
    let n_tree = params.n_tree();
    let empty = client.empty_record();
    let mut nodes = Vec::with_capacity((1 << (n_tree + 1)) - 1);
    for _ in 0..(1usize << (n_tree + 1)) - 1 {
        let bucket = (0..params.n_bkt)
            .map(|_| client.seal(&empty))
            .collect::<Result<Vec<_>>>()?;
        nodes.push(bucket);
    }
    Ok((
        client,
        ServerDb {
            n_tree,
            n_bkt: params.n_bkt,
            nodes,
        },
    ))
}

/// One access; returns the block's data after the operation and the access pattern.
pub fn oram_access(client: &mut ClientState, server: &mut ServerDb, dr: &DataRequest) -> Result<(BitString, AccessPattern)> {
    let p = client.params.clone();
    if dr.id == 0 || dr.id > p.n_db {
        return Err(Error::Param(format!("id {} outside 1..={}", dr.id, p.n_db)));
    }
    if let Some(d) = &dr.data {
        if d.len() != p.n_dat {
            return Err(Error::Width {
                expected: p.n_dat,
                got: d.len(),
            });
        }
    }
    if dr.op == Op::Write && dr.data.is_none() {
        return Err(Error::Param("write without data".into()));
    }
    let pre = server.clone();
    let leaf = client.position[dr.id - 1];
    let fresh = client.next_leaf();
    client.position[dr.id - 1] = fresh;

    let down = server.fetch_branch(leaf);
    let mut working = std::mem::take(&mut client.stash);
    for b in &down {
        let rec = client.open_block(b)?;
        if rec.tag != 0 {
            working.push(rec);
        }
    }

    let pos = match working.iter().position(|r| r.tag as usize == dr.id) {
        Some(i) => i,
        None => {
            working.push(Record {
                tag: dr.id as u64,
                data: BitString::zeros(p.n_dat),
            });
            working.len() - 1
        }
    };
    if dr.op == Op::Write {
        working[pos].data = dr.data.clone().expect("checked above");
    }
    let result = working[pos].data.clone();

    let n_tree = p.n_tree();
    let mut placed: Vec<Vec<Record>> = vec![Vec::new(); n_tree + 1];
    for d in (0..=n_tree).rev() {
        let mut rest = Vec::with_capacity(working.len());
        for rec in working {
            let target = client.position[rec.tag as usize - 1];
            if placed[d].len() < p.n_bkt && common_depth(n_tree, target, leaf) >= d {
                placed[d].push(rec);
            } else {
                rest.push(rec);
            }
        }
        working = rest;
    }
    client.stash = working;
    client.stash_log.push(client.stash.len());

    let empty = client.empty_record();
    let mut up = Vec::with_capacity(down.len());
    for bucket in &placed {
        for slot in 0..p.n_bkt {
            let rec = bucket.get(slot).unwrap_or(&empty).clone();
            up.push(client.seal(&rec)?);
        }
    }
    server.store_branch(leaf, up.clone())?;
    Ok((
        result,
        AccessPattern {
            pre,
            leaf,
            down,
            up,
            post: server.clone(),
        },
    ))
}
