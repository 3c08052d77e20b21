//! Byte-granular CFB stream mode over the block cipher, and a deterministic
//! random byte generator built from it.
//!
//! CFB keeps the last eight ciphertext bytes in a shift register and
//! encrypts that register to refill an eight-byte keystream buffer whenever
//! it runs dry. Because feedback happens per byte, messages of any length
//! encrypt without padding. Both directions use the cipher's encrypt path,
//! so every context holds an encrypt-direction subkey table.

use crate::idea::{encrypt_block, expand_key, Block64, Key128, SubKeys, BLOCK_LEN};

/// Streaming CFB encryption/decryption state for one key and IV.
///
/// A context is stateful and single-owner: feeding it a message in chunks
/// produces the same bytes as one call with the whole message. Key material
/// is zeroed on drop.
pub struct CfbContext {
    subkeys: SubKeys,
    shift_register: [u8; BLOCK_LEN],
    keystream: [u8; BLOCK_LEN],
    used: usize,
}

impl CfbContext {
    pub fn new(key: &Key128, iv: [u8; BLOCK_LEN]) -> Self {
        Self::from_subkeys(expand_key(key), iv)
    }

    /// Builds a context from an already expanded table, avoiding repeated
    /// key expansion when many messages share one key.
    pub fn from_subkeys(subkeys: SubKeys, iv: [u8; BLOCK_LEN]) -> Self {
        Self {
            subkeys,
            shift_register: iv,
            keystream: [0; BLOCK_LEN],
            // Full buffer forces keystream generation on the first byte.
            used: BLOCK_LEN,
        }
    }

    /// Restarts the stream under a new IV, keeping the expanded key.
    pub fn reinit(&mut self, iv: [u8; BLOCK_LEN]) {
        self.shift_register = iv;
        self.keystream = [0; BLOCK_LEN];
        self.used = BLOCK_LEN;
    }

    pub fn encrypt_in_place(&mut self, data: &mut [u8]) {
        for byte in data.iter_mut() {
            *byte ^= self.next_keystream_byte();
            self.feed_back(*byte);
        }
    }

    pub fn decrypt_in_place(&mut self, data: &mut [u8]) {
        for byte in data.iter_mut() {
            let cipher_byte = *byte;
            *byte ^= self.next_keystream_byte();
            self.feed_back(cipher_byte);
        }
    }

    pub fn encrypt(&mut self, plaintext: &[u8]) -> Vec<u8> {
        let mut out = plaintext.to_vec();
        self.encrypt_in_place(&mut out);
        out
    }

    pub fn decrypt(&mut self, ciphertext: &[u8]) -> Vec<u8> {
        let mut out = ciphertext.to_vec();
        self.decrypt_in_place(&mut out);
        out
    }

    fn next_keystream_byte(&mut self) -> u8 {
        if self.used == BLOCK_LEN {
            self.keystream =
                encrypt_block(Block64::from_bytes(self.shift_register), &self.subkeys).to_bytes();
            self.used = 0;
        }
        let byte = self.keystream[self.used];
        self.used += 1;
        byte
    }

    // The ciphertext byte enters the register in both directions; that is
    // what makes the stream self-synchronizing.
    fn feed_back(&mut self, cipher_byte: u8) {
        self.shift_register.rotate_left(1);
        self.shift_register[BLOCK_LEN - 1] = cipher_byte;
    }
}

impl Drop for CfbContext {
    fn drop(&mut self) {
        self.subkeys.wipe();
        wipe_bytes(&mut self.shift_register);
        wipe_bytes(&mut self.keystream);
    }
}

/// Deterministic pseudo-random byte stream derived from a key and an
/// 8-byte seed. Each refill encrypts the running state XORed with a
/// big-endian block counter and feeds the output back as the next state.
///
/// This is plumbing for IVs and test fixtures, not a vetted CSPRNG.
pub struct RandContext {
    subkeys: SubKeys,
    state: [u8; BLOCK_LEN],
    counter: u64,
    buffer: [u8; BLOCK_LEN],
    used: usize,
}

impl RandContext {
    pub fn new(key: &Key128, seed: [u8; BLOCK_LEN]) -> Self {
        Self {
            subkeys: expand_key(key),
            state: seed,
            counter: 0,
            buffer: [0; BLOCK_LEN],
            used: BLOCK_LEN,
        }
    }

    /// Seeds from the wall clock, the process id, and a process-wide
    /// counter, so streams from two contexts created this way differ even
    /// when created in the same instant. That is all IV generation needs.
    pub fn from_clock(key: &Key128) -> Self {
        static SALT: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        let salt = SALT.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let seed = nanos
            ^ u64::from(std::process::id()).rotate_left(40)
            ^ salt.rotate_left(17);
        Self::new(key, seed.to_be_bytes())
    }

    pub fn next_byte(&mut self) -> u8 {
        if self.used == BLOCK_LEN {
            for (s, c) in self.state.iter_mut().zip(self.counter.to_be_bytes()) {
                *s ^= c;
            }
            self.buffer =
                encrypt_block(Block64::from_bytes(self.state), &self.subkeys).to_bytes();
            self.state = self.buffer;
            self.counter += 1;
            self.used = 0;
        }
        let byte = self.buffer[self.used];
        self.used += 1;
        byte
    }

    pub fn fill(&mut self, out: &mut [u8]) {
        for byte in out.iter_mut() {
            *byte = self.next_byte();
        }
    }

    pub fn next_block(&mut self) -> [u8; BLOCK_LEN] {
        let mut out = [0u8; BLOCK_LEN];
        self.fill(&mut out);
        out
    }
}

impl Drop for RandContext {
    fn drop(&mut self) {
        self.subkeys.wipe();
        wipe_bytes(&mut self.state);
        wipe_bytes(&mut self.buffer);
    }
}

fn wipe_bytes(bytes: &mut [u8]) {
    for b in bytes.iter_mut() {
        unsafe { std::ptr::write_volatile(b, 0) };
    }
    std::sync::atomic::compiler_fence(std::sync::atomic::Ordering::SeqCst);
}
