//! PathQORAM over per-block density matrices.
//!
//! Each block is `n_tag + n_dat` qubits encrypted with the PRF-keyed QOTP.
//! Data registers only ever move by swapping; tags are the only qubits measured.

use serde::{Deserialize, Serialize};

use super::skqes::{KeyedScheme1, KeyedSkqes, QCiphertext, Scheme1, Skqes};
use crate::crypto::arith::{bit_len, ceil_log2};
use crate::crypto::prng::PrngState;
use crate::crypto::SecretKey;
use crate::oram::{common_depth, path_nodes, Fnv, LeafPrng, Op};
use crate::rng::{rng_for, stream, Rng};
use crate::{BitString, Error, Result};
use qsim::{measure_density, partial_trace, DensityMatrix, MeasureRandomness, DEFAULT_QUBIT_CAP};

pub const MAX_QORAM_DB: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QoramParams {
    pub n: usize,
    pub n_db: usize,
    pub n_dat: usize,
    pub n_bkt: usize,
    pub r_bits: usize,
    pub prng: LeafPrng,
}

impl QoramParams {
    pub fn new(n_db: usize, n_dat: usize) -> Self {
        Self {
            n: 16,
            n_db,
            n_dat,
            n_bkt: 4,
            r_bits: 32,
            prng: LeafPrng::Secure,
        }
    }

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
        if self.n_db == 0 || self.n_db > MAX_QORAM_DB {
            return Err(Error::Param(format!("n_db = {} outside 1..={MAX_QORAM_DB}", self.n_db)));
        }
        if self.n_dat == 0 || self.n_bkt == 0 {
            return Err(Error::Param("n_dat and n_bkt must be positive".into()));
        }
        // A block and the client's payload are held jointly during a swap.
        if self.n_blk() + self.n_dat > DEFAULT_QUBIT_CAP {
            return Err(Error::Param(format!(
                "qubit budget exceeded: {} block + {} payload qubits",
                self.n_blk(),
                self.n_dat
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QBlock {
    pub ct: QCiphertext,
}

impl QBlock {
    pub fn digest(&self) -> String {
        format!("{:016x}", self.ct.state.digest())
    }

    pub fn r_hex(&self) -> String {
        self.ct.r.as_ref().map(|r| r.to_hex()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QServer {
    n_tree: usize,
    n_bkt: usize,
    nodes: Vec<Vec<QBlock>>,
}

impl QServer {
    pub fn n_tree(&self) -> usize {
        self.n_tree
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn bucket(&self, node: usize) -> &[QBlock] {
        &self.nodes[node]
    }

    /// Hands over the branch to `leaf`, leaving the nodes empty until upload.
    fn take_branch(&mut self, leaf: u64) -> Vec<QBlock> {
        path_nodes(self.n_tree, leaf)
            .into_iter()
            .flat_map(|i| std::mem::take(&mut self.nodes[i]))
            .collect()
    }

    fn store_branch(&mut self, leaf: u64, blocks: Vec<QBlock>) {
        let mut it = blocks.into_iter();
        for node in path_nodes(self.n_tree, leaf) {
            self.nodes[node] = it.by_ref().take(self.n_bkt).collect();
        }
    }

    pub fn digest(&self) -> String {
        let mut h = Fnv::new();
        for bucket in &self.nodes {
            for b in bucket {
                h.write(b.digest().as_bytes());
                h.write(b.r_hex().as_bytes());
            }
            h.write(b"#");
        }
        h.hex()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QRecord {
    pub tag: u64,
    pub data: DensityMatrix,
}

pub struct QClient {
    params: QoramParams,
    key: SecretKey,
    scheme: KeyedScheme1,
    position: Vec<u64>,
    stash: Vec<QRecord>,
    prng: PrngState,
    enc_rng: Rng,
    meas_rng: Rng,
    stash_log: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDataRequest {
    pub op: Op,
    pub id: usize,
    pub payload: Option<DensityMatrix>,
}

impl QuantumDataRequest {
    pub fn read(id: usize) -> Self {
        Self {
            op: Op::Read,
            id,
            payload: None,
        }
    }

    pub fn write(id: usize, payload: DensityMatrix) -> Self {
        Self {
            op: Op::Write,
            id,
            payload: Some(payload),
        }
    }
}

/// Classical channel contents of one access plus ciphertext digests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockView {
    pub r: String,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTranscript {
    pub leaf: u64,
    pub down: Vec<BlockView>,
    pub up: Vec<BlockView>,
}

fn view(blocks: &[QBlock]) -> Vec<BlockView> {
    blocks
        .iter()
        .map(|b| BlockView {
            r: b.r_hex(),
            digest: b.digest(),
        })
        .collect()
}

impl QClient {
    pub fn params(&self) -> &QoramParams {
        &self.params
    }

    pub fn key(&self) -> &SecretKey {
        &self.key
    }

    pub fn position(&self, id: usize) -> Option<u64> {
        id.checked_sub(1).and_then(|i| self.position.get(i)).copied()
    }

    pub fn stash_log(&self) -> &[usize] {
        &self.stash_log
    }

    fn next_leaf(&mut self) -> u64 {
        let mask = (1u64 << self.params.n_tree()) - 1;
        self.prng.next_bits(self.params.n_tag()) & mask
    }

    fn all_qubits(&self) -> Vec<usize> {
        (0..self.params.n_blk()).collect()
    }

    fn seal(&mut self, rec: &QRecord) -> Result<QBlock> {
        let tag = DensityMatrix::basis(self.params.n_tag(), rec.tag as usize)?;
        let plain = tag.tensor(&rec.data)?;
        let r = BitString::random(self.params.r_bits, &mut self.enc_rng);
        let targets = self.all_qubits();
        Ok(QBlock {
            ct: self.scheme.enc_on(&plain, &targets, Some(&r))?,
        })
    }

    /// Decrypts a block and measures its tag qubits only.
    pub fn open_block(&mut self, b: &QBlock) -> Result<QRecord> {
        let targets = self.all_qubits();
        let plain = self
            .scheme
            .dec_on(&b.ct, &targets)
            .map_err(|e| Error::Soundness(format!("undecryptable block: {e}")))?;
        let n_tag = self.params.n_tag();
        let tag_qubits: Vec<usize> = (0..n_tag).collect();
        let (m, post) = measure_density(&plain, &tag_qubits, MeasureRandomness::draw(&mut self.meas_rng))?;
        if m.outcome > self.params.n_db {
            return Err(Error::Soundness(format!("tag {} exceeds n_db", m.outcome)));
        }
        let data_qubits: Vec<usize> = (n_tag..self.params.n_blk()).collect();
        Ok(QRecord {
            tag: m.outcome as u64,
            data: partial_trace(&post, &data_qubits)?,
        })
    }

    fn empty_record(&self) -> Result<QRecord> {
        Ok(QRecord {
            tag: 0,
            data: DensityMatrix::basis(self.params.n_dat, 0)?,
        })
    }
}

pub fn qoram_init(params: &QoramParams, seed: u64) -> Result<(QClient, QServer)> {
    params.validate()?;
    let scheme = Scheme1 {
        n_qubits: params.n_blk(),
        r_bits: params.r_bits,
        key_bits: params.n,
    };
    let key = scheme.keygen(&mut rng_for(seed, stream::KEY));
    let mut prng_rng = rng_for(seed, stream::PRNG);
    let prng = match params.prng {
        LeafPrng::BlumMicali { p, g } => PrngState::blum_micali_random(p, g, &mut prng_rng)?,
        LeafPrng::Secure => PrngState::counter_prf(rand::Rng::gen(&mut prng_rng)),
    };
    let mut client = QClient {
        params: params.clone(),
        scheme: scheme.load_concrete(&key)?,
        key,
        position: Vec::with_capacity(params.n_db),
        stash: Vec::new(),
        prng,
        enc_rng: rng_for(seed, stream::ENCRYPTION),
        meas_rng: rng_for(seed, stream::MEASUREMENT),
        stash_log: Vec::new(),
    };
    for _ in 0..params.n_db {
        let leaf = client.next_leaf();
        client.position.push(leaf);
    }
    let n_tree = params.n_tree();
    let empty = client.empty_record()?;
    let mut nodes = Vec::new();
    for _ in 0..(1usize << (n_tree + 1)) - 1 {
        let bucket = (0..params.n_bkt)
            .map(|_| client.seal(&empty))
            .collect::<Result<Vec<_>>>()?;
        nodes.push(bucket);
    }
    Ok((
        client,
        QServer {
            n_tree,
            n_bkt: params.n_bkt,
            nodes,
        },
    ))
}

/// One access. The client's payload (`|0…0⟩` for a read) is swapped with the
/// block's data register; the displaced state is returned.
pub fn qoram_access(client: &mut QClient, server: &mut QServer, qdr: &QuantumDataRequest) -> Result<(DensityMatrix, QTranscript)> {
    let p = client.params.clone();
    if qdr.id == 0 || qdr.id > p.n_db {
        return Err(Error::Param(format!("id {} outside 1..={}", qdr.id, p.n_db)));
    }
    let payload = match (&qdr.op, &qdr.payload) {
        (_, Some(phi)) => {
            if phi.n_qubits() != p.n_dat {
                return Err(Error::Width {
                    expected: p.n_dat,
                    got: phi.n_qubits(),
                });
            }
            phi.clone()
        }
        (Op::Read, None) => DensityMatrix::basis(p.n_dat, 0)?,
        (Op::Write, None) => return Err(Error::Param("write without payload".into())),
    };

    let leaf = client.position[qdr.id - 1];
    let fresh = client.next_leaf();
    client.position[qdr.id - 1] = fresh;

    let down = server.take_branch(leaf);
    let down_view = view(&down);
    let mut working = std::mem::take(&mut client.stash);
    for b in &down {
        let rec = client.open_block(b)?;
        if rec.tag != 0 {
            working.push(rec);
        }
    }
    let pos = match working.iter().position(|r| r.tag as usize == qdr.id) {
        Some(i) => i,
        None => {
            working.push(QRecord {
                tag: qdr.id as u64,
                data: DensityMatrix::basis(p.n_dat, 0)?,
            });
            working.len() - 1
        }
    };
    let out = std::mem::replace(&mut working[pos].data, payload);

    let n_tree = p.n_tree();
    let mut placed: Vec<Vec<QRecord>> = vec![Vec::new(); n_tree + 1];
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

    let empty = client.empty_record()?;
    let mut up = Vec::with_capacity(down.len());
    for bucket in &placed {
        for slot in 0..p.n_bkt {
            let rec = bucket.get(slot).unwrap_or(&empty).clone();
            up.push(client.seal(&rec)?);
        }
    }
    let up_view = view(&up);
    server.store_branch(leaf, up);
    Ok((
        out,
        QTranscript {
            leaf,
            down: down_view,
            up: up_view,
        },
    ))
}

/// What the default extractor reports: the classical transcript and digests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractorReport {
    pub leaf: u64,
    pub down: Vec<BlockView>,
    pub up: Vec<BlockView>,
    pub server_digest: String,
}

/// Reads only classical data and ciphertext digests; the server is borrowed
/// immutably, so the extraction acts as the identity on the quantum state.
pub fn safe_extractor_default(server: &QServer, transcript: &QTranscript) -> ExtractorReport {
    ExtractorReport {
        leaf: transcript.leaf,
        down: transcript.down.clone(),
        up: transcript.up.clone(),
        server_digest: server.digest(),
    }
}
