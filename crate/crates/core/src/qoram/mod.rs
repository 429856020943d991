//! Quantum encryption schemes and PathQORAM.

mod path;
mod pkqes;
mod skqes;

pub use path::{
    qoram_access, qoram_init, safe_extractor_default, BlockView, ExtractorReport, QBlock, QClient, QRecord, QServer,
    QTranscript, QoramParams, QuantumDataRequest, MAX_QORAM_DB,
};
pub use pkqes::{pkqes_dec, pkqes_enc, pkqes_enc_random, pkqes_pad, PkQCiphertext};
pub use skqes::{KeyedLift, KeyedScheme1, KeyedSkqes, QCiphertext, Scheme1, Skqes, Type2Lift};
