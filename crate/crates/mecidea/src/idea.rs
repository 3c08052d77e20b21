//! The IDEA block cipher: 64-bit blocks, 128-bit keys, eight rounds plus an
//! output transformation.
//!
//! Three incompatible group operations mix the block: XOR on 16 bits,
//! addition mod 2^16, and multiplication mod 2^16+1 where the encoding 0
//! stands for 2^16. Subkeys come from repeated 25-bit left rotation of the
//! key. Decryption runs the same round function over an inverted subkey
//! table, so there is a single cipher path for both directions.

use thiserror::Error;

/// Block size in bytes.
pub const BLOCK_LEN: usize = 8;
/// Key size in bytes.
pub const KEY_LEN: usize = 16;
/// Number of 16-bit subkeys: 8 rounds of 6, plus 4 for the output transform.
pub const SUBKEY_COUNT: usize = 52;

const ROUNDS: usize = 8;
const MUL_MODULUS: u64 = 0x1_0001;

/// One 64-bit block as four 16-bit lanes, most significant lane first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block64 {
    pub x1: u16,
    pub x2: u16,
    pub x3: u16,
    pub x4: u16,
}

impl Block64 {
    pub fn from_bytes(bytes: [u8; BLOCK_LEN]) -> Self {
        Self {
            x1: u16::from_be_bytes([bytes[0], bytes[1]]),
            x2: u16::from_be_bytes([bytes[2], bytes[3]]),
            x3: u16::from_be_bytes([bytes[4], bytes[5]]),
            x4: u16::from_be_bytes([bytes[6], bytes[7]]),
        }
    }

    pub fn to_bytes(self) -> [u8; BLOCK_LEN] {
        let mut out = [0u8; BLOCK_LEN];
        out[0..2].copy_from_slice(&self.x1.to_be_bytes());
        out[2..4].copy_from_slice(&self.x2.to_be_bytes());
        out[4..6].copy_from_slice(&self.x3.to_be_bytes());
        out[6..8].copy_from_slice(&self.x4.to_be_bytes());
        out
    }

    pub fn from_u64(value: u64) -> Self {
        Self::from_bytes(value.to_be_bytes())
    }

    pub fn to_u64(self) -> u64 {
        u64::from_be_bytes(self.to_bytes())
    }
}

/// A 128-bit cipher key. Bit 0 is the most significant bit of byte 0.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Key128([u8; KEY_LEN]);

impl Key128 {
    pub fn new(bytes: [u8; KEY_LEN]) -> Self {
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; KEY_LEN] {
        &self.0
    }

    /// Lowercase hex, 32 characters.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, InvalidKeyHex> {
        let bytes = hex::decode(s).map_err(|_| InvalidKeyHex)?;
        let bytes: [u8; KEY_LEN] = bytes.try_into().map_err(|_| InvalidKeyHex)?;
        Ok(Self(bytes))
    }
}

/// Key material stays out of debug output.
impl std::fmt::Debug for Key128 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Key128(..)")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("key must be exactly 32 hex characters")]
pub struct InvalidKeyHex;

/// Whether a subkey table drives encryption or decryption.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Encrypt,
    Decrypt,
}

/// The 52-entry expanded subkey table together with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubKeys {
    keys: [u16; SUBKEY_COUNT],
    direction: Direction,
}

impl SubKeys {
    pub fn as_array(&self) -> &[u16; SUBKEY_COUNT] {
        &self.keys
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Overwrites the table with zeros. Callers that buffer key material
    /// use this before releasing a context.
    pub(crate) fn wipe(&mut self) {
        for k in self.keys.iter_mut() {
            // Volatile so the wipe is not optimized away as a dead store.
            unsafe { std::ptr::write_volatile(k, 0) };
        }
        std::sync::atomic::compiler_fence(std::sync::atomic::Ordering::SeqCst);
    }
}

/// Multiplication in the group of residues mod 2^16+1, on the 16-bit
/// encoding where 0 represents 2^16.
pub fn mul(a: u16, b: u16) -> u16 {
    let x = if a == 0 { 0x1_0000u64 } else { u64::from(a) };
    let y = if b == 0 { 0x1_0000u64 } else { u64::from(b) };
    let product = (x * y) % MUL_MODULUS;
    if product == 0x1_0000 {
        0
    } else {
        product as u16
    }
}

/// Multiplicative inverse of `x` mod 2^16+1 in the same encoding, by the
/// extended Euclidean algorithm. 0 and 1 are their own inverses.
pub fn mul_inv(x: u16) -> u16 {
    if x <= 1 {
        return x;
    }
    let (mut r0, mut r1) = (MUL_MODULUS as i64, i64::from(x));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(MUL_MODULUS as i64) as u16
}

fn add_inv(x: u16) -> u16 {
    x.wrapping_neg()
}

/// Expands a key into the 52 encryption subkeys. The first eight are the
/// big-endian 16-bit slices of the key; every following group of eight
/// comes from rotating the whole key a further 25 bits to the left.
pub fn expand_key(key: &Key128) -> SubKeys {
    let mut keys = [0u16; SUBKEY_COUNT];
    let mut word = u128::from_be_bytes(*key.as_bytes());
    for group in keys.chunks_mut(8) {
        for (i, k) in group.iter_mut().enumerate() {
            *k = (word >> (112 - 16 * i)) as u16;
        }
        word = word.rotate_left(25);
    }
    SubKeys {
        keys,
        direction: Direction::Encrypt,
    }
}

/// Derives the subkey table for the opposite direction. Multiplication
/// subkeys are replaced by their multiplicative inverses, addition subkeys
/// by their additive inverses, taken from the mirrored round; the two
/// middle addition subkeys swap places for interior rounds because the
/// round function leaves the inner lanes interchanged. The construction is
/// an involution, so it also maps a decryption table back to encryption.
pub fn invert_key(subkeys: &SubKeys) -> SubKeys {
    let e = subkeys.as_array();
    let mut d = [0u16; SUBKEY_COUNT];

    d[48] = mul_inv(e[0]);
    d[49] = add_inv(e[1]);
    d[50] = add_inv(e[2]);
    d[51] = mul_inv(e[3]);

    for round in 0..ROUNDS {
        let out = 6 * round;
        if round == 0 {
            d[0] = mul_inv(e[48]);
            d[1] = add_inv(e[49]);
            d[2] = add_inv(e[50]);
            d[3] = mul_inv(e[51]);
        } else {
            let src = 6 * (ROUNDS - round);
            d[out] = mul_inv(e[src]);
            d[out + 1] = add_inv(e[src + 2]);
            d[out + 2] = add_inv(e[src + 1]);
            d[out + 3] = mul_inv(e[src + 3]);
        }
        let ma = 6 * (ROUNDS - 1 - round);
        d[out + 4] = e[ma + 4];
        d[out + 5] = e[ma + 5];
    }

    SubKeys {
        keys: d,
        direction: match subkeys.direction {
            Direction::Encrypt => Direction::Decrypt,
            Direction::Decrypt => Direction::Encrypt,
        },
    }
}

/// One cipher round. Returns the state with the two inner lanes already
/// interchanged, which is how the XOR mixing naturally falls out.
fn round(x: [u16; 4], z: &[u16]) -> [u16; 4] {
    let a = mul(x[0], z[0]);
    let b = x[1].wrapping_add(z[1]);
    let c = x[2].wrapping_add(z[2]);
    let d = mul(x[3], z[3]);

    let t = mul(a ^ c, z[4]);
    let u = mul(t.wrapping_add(b ^ d), z[5]);
    let v = t.wrapping_add(u);

    [a ^ u, c ^ u, b ^ v, d ^ v]
}

fn cipher_block(block: Block64, k: &[u16; SUBKEY_COUNT]) -> Block64 {
    let mut x = [block.x1, block.x2, block.x3, block.x4];
    for z in k[..6 * ROUNDS].chunks_exact(6) {
        x = round(x, z);
    }
    // The loop leaves the inner lanes swapped once more than the cipher
    // definition asks for; reading them crosswise here undoes that, so the
    // last round effectively skips the interchange.
    Block64 {
        x1: mul(x[0], k[48]),
        x2: x[2].wrapping_add(k[49]),
        x3: x[1].wrapping_add(k[50]),
        x4: mul(x[3], k[51]),
    }
}

/// Encrypts one block. Expects a table in the encrypt direction.
pub fn encrypt_block(block: Block64, subkeys: &SubKeys) -> Block64 {
    debug_assert_eq!(subkeys.direction, Direction::Encrypt);
    cipher_block(block, subkeys.as_array())
}

/// Decrypts one block. Expects a table produced by [`invert_key`].
pub fn decrypt_block(block: Block64, subkeys: &SubKeys) -> Block64 {
    debug_assert_eq!(subkeys.direction, Direction::Decrypt);
    cipher_block(block, subkeys.as_array())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn key_from_words(words: [u16; 8]) -> Key128 {
        let mut bytes = [0u8; KEY_LEN];
        for (i, w) in words.iter().enumerate() {
            bytes[2 * i..2 * i + 2].copy_from_slice(&w.to_be_bytes());
        }
        Key128::new(bytes)
    }

    #[test]
    fn mul_identity_and_edge_encodings() {
        assert_eq!(mul(1, 0x1234), 0x1234);
        // 0 encodes 2^16 = -1 mod 2^16+1, and (-1)(-1) = 1.
        assert_eq!(mul(0, 0), 1);
        // 2 * 32768 = 2^16, which encodes back to 0.
        assert_eq!(mul(2, 32768), 0);
    }

    #[test]
    fn mul_commutes_on_sampled_pairs() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100_000 {
            let a: u16 = rng.gen();
            let b: u16 = rng.gen();
            assert_eq!(mul(a, b), mul(b, a));
            assert_eq!(mul(a, 1), a);
        }
    }

    // Search oracle, deliberately independent of the Euclidean path.
    fn mul_inv_by_search(x: u16) -> u16 {
        (0..=u16::MAX).find(|&c| mul(x, c) == 1).unwrap()
    }

    #[test]
    fn mul_inv_fixed_points_and_search_oracle() {
        assert_eq!(mul_inv(1), 1);
        assert_eq!(mul_inv(0), 0);
        assert_eq!(mul_inv(2), 32769);
        assert_eq!(mul_inv_by_search(2), 32769);
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..64 {
            let x: u16 = rng.gen();
            assert_eq!(mul_inv(x), mul_inv_by_search(x));
        }
    }

    #[test]
    fn mul_inv_inverts_every_encoding() {
        for x in 0..=u16::MAX {
            assert_eq!(mul(x, mul_inv(x)), 1, "x = {x}");
        }
    }

    #[test]
    fn expand_key_of_zero_key_is_all_zero() {
        let subkeys = expand_key(&Key128::new([0; KEY_LEN]));
        assert!(subkeys.as_array().iter().all(|&k| k == 0));
    }

    #[test]
    fn expand_key_first_group_is_direct_slicing() {
        let key = key_from_words([1, 2, 3, 4, 5, 6, 7, 8]);
        let subkeys = expand_key(&key);
        assert_eq!(&subkeys.as_array()[..8], &[1, 2, 3, 4, 5, 6, 7, 8]);
    }

    // Byte-level rotation oracle: rebuilds subkey group g by picking
    // individual bits of the key rotated left by 25*g, without u128
    // arithmetic. Kept separate from the schedule loop on purpose.
    fn subkey_by_bits(key: &Key128, group: usize, index: usize) -> u16 {
        let bytes = key.as_bytes();
        let mut value = 0u16;
        for bit in 0..16 {
            let pos = (25 * group + 16 * index + bit) % 128;
            let byte = bytes[pos / 8];
            let bit_value = (byte >> (7 - pos % 8)) & 1;
            value = (value << 1) | u16::from(bit_value);
        }
        value
    }

    #[test]
    fn expand_key_matches_bit_slicing_oracle() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let key = Key128::new(rng.gen());
            let subkeys = expand_key(&key);
            for i in 0..SUBKEY_COUNT {
                assert_eq!(subkeys.as_array()[i], subkey_by_bits(&key, i / 8, i % 8));
            }
        }
    }

    #[test]
    fn invert_key_is_involution() {
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..50 {
            let enc = expand_key(&Key128::new(rng.gen()));
            let twice = invert_key(&invert_key(&enc));
            assert_eq!(twice, enc);
        }
    }

    #[test]
    fn invert_key_of_zero_table_is_zero() {
        let enc = expand_key(&Key128::new([0; KEY_LEN]));
        let dec = invert_key(&enc);
        assert!(dec.as_array().iter().all(|&k| k == 0));
        assert_eq!(dec.direction(), Direction::Decrypt);
    }

    // Single round with identity subkeys (z1=z4=z5=1, z2=z3=z6=0), worked
    // out by hand on the block (1,2,3,4).
    #[test]
    fn round_matches_hand_evaluation() {
        let state = round([1, 2, 3, 4], &[1, 0, 0, 1, 1, 0]);
        assert_eq!(state, [65528, 65530, 65529, 65535]);
    }

    #[test]
    fn known_answer_vector() {
        let key = key_from_words([1, 2, 3, 4, 5, 6, 7, 8]);
        let enc = expand_key(&key);
        let ct = encrypt_block(
            Block64 {
                x1: 0,
                x2: 1,
                x3: 2,
                x4: 3,
            },
            &enc,
        );
        assert_eq!(
            ct,
            Block64 {
                x1: 0x11FB,
                x2: 0xED2B,
                x3: 0x0198,
                x4: 0x6DE5,
            }
        );
        let pt = decrypt_block(ct, &invert_key(&enc));
        assert_eq!(
            pt,
            Block64 {
                x1: 0,
                x2: 1,
                x3: 2,
                x4: 3,
            }
        );
    }

    // Step-by-step transcription of the cipher definition, kept as an
    // independent oracle. Interior rounds leave the inner lanes swapped;
    // the last round restores lane order before the output transform.
    fn literal_encrypt(block: Block64, k: &[u16; SUBKEY_COUNT]) -> Block64 {
        let mut x = [block.x1, block.x2, block.x3, block.x4];
        for r in 0..ROUNDS {
            let z = &k[6 * r..6 * r + 6];
            let step4 = mul(x[0], z[0]);
            let step5 = x[1].wrapping_add(z[1]);
            let step6 = x[2].wrapping_add(z[2]);
            let step7 = mul(x[3], z[3]);
            let step8 = step4 ^ step6;
            let step9 = step5 ^ step7;
            let step10 = mul(step8, z[4]);
            let step11 = step9.wrapping_add(step10);
            let step12 = mul(step11, z[5]);
            let step13 = step10.wrapping_add(step12);
            let step14 = step4 ^ step12;
            let step15 = step6 ^ step12;
            let step16 = step5 ^ step13;
            let step17 = step7 ^ step13;
            x = if r == ROUNDS - 1 {
                [step14, step16, step15, step17]
            } else {
                [step14, step15, step16, step17]
            };
        }
        Block64 {
            x1: mul(x[0], k[48]),
            x2: x[1].wrapping_add(k[49]),
            x3: x[2].wrapping_add(k[50]),
            x4: mul(x[3], k[51]),
        }
    }

    #[test]
    fn encrypt_agrees_with_literal_transcription() {
        let mut rng = StdRng::seed_from_u64(15);
        for _ in 0..1000 {
            let key = Key128::new(rng.gen());
            let enc = expand_key(&key);
            let block = Block64::from_bytes(rng.gen());
            assert_eq!(
                encrypt_block(block, &enc),
                literal_encrypt(block, enc.as_array())
            );
        }
    }

    #[test]
    fn random_round_trips() {
        let mut rng = StdRng::seed_from_u64(16);
        for _ in 0..10_000 {
            let key = Key128::new(rng.gen());
            let enc = expand_key(&key);
            let dec = invert_key(&enc);
            let block = Block64::from_bytes(rng.gen());
            assert_eq!(decrypt_block(encrypt_block(block, &enc), &dec), block);
        }
    }

    #[test]
    fn sample_message_bytes_round_trip() {
        let message = [12u8, 34, 56, 77, 86, 34, 55, 66];
        let key = Key128::from_hex("000102030405060708090a0b0c0d0e0f").unwrap();
        let enc = expand_key(&key);
        let dec = invert_key(&enc);
        let ct = encrypt_block(Block64::from_bytes(message), &enc);
        assert_ne!(ct.to_bytes(), message);
        assert_eq!(decrypt_block(ct, &dec).to_bytes(), message);
    }

    #[test]
    fn block_byte_conversion_is_lossless() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..1000 {
            let bytes: [u8; BLOCK_LEN] = rng.gen();
            assert_eq!(Block64::from_bytes(bytes).to_bytes(), bytes);
        }
        assert_eq!(Block64::from_u64(0x0001000200030004).to_bytes(), [0, 1, 0, 2, 0, 3, 0, 4]);
    }

    #[test]
    fn key_hex_round_trip_and_rejection() {
        let key = Key128::from_hex("00112233445566778899aabbccddeeff").unwrap();
        assert_eq!(key.to_hex(), "00112233445566778899aabbccddeeff");
        assert!(Key128::from_hex("00112233").is_err());
        assert!(Key128::from_hex("zz112233445566778899aabbccddeeff").is_err());
    }
}
