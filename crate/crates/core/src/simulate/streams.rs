//! Counter-based random streams.
//!
//! Every trial gets ChaCha stream `index` of the root seed, so a trial's
//! draws depend only on `(seed, index)` and never on which worker ran it.
//! Within a trial, each hop reads from its own fixed offset, so the draws
//! of one hop do not shift when another hop consumes more randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SUBSTREAM_SHIFT: u32 = 48;

#[derive(Debug, Clone)]
pub struct TrialStreams {
    root: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(seed: u64) -> Self {
        Self {
            root: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        self.substream(index, 0)
    }

    /// Part `part` of trial `index`: the same ChaCha stream, starting
    /// `part * 2^48` words in.
    pub fn substream(&self, index: u64, part: u8) -> ChaCha8Rng {
        let mut rng = self.root.clone();
        rng.set_stream(index);
        rng.set_word_pos(u128::from(part) << SUBSTREAM_SHIFT);
        rng
    }
}
