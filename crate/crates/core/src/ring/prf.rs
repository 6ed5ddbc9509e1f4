use sha2::{Digest, Sha256};

/// Byte-string label for a keyed sample. Built from a domain label and a
/// sequence of integers so that distinct call sites never collide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tag(Vec<u8>);

impl Tag {
    pub fn new(label: &str) -> Self {
        let mut bytes = Vec::with_capacity(label.len() + 33);
        bytes.push(label.len() as u8);
        bytes.extend_from_slice(label.as_bytes());
        Tag(bytes)
    }

    pub fn with(mut self, part: u64) -> Self {
        self.0.extend_from_slice(&part.to_le_bytes());
        self
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Tag(bytes.to_vec())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Keyed pseudo-random 64-bit word: the first eight bytes of
/// `SHA-256(seed || tag)`. Stateless, so values for never-seen tags can be
/// regenerated at any time.
pub fn prf_u64(seed: u64, tag: &Tag) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(&tag.0);
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// Keyed sample from a ring; see [`crate::ring::Ring::sample`].
pub fn prf_sample<R: crate::ring::Ring>(ring: &R, seed: u64, tag: &Tag) -> R::Elem {
    ring.sample(seed, tag)
}
