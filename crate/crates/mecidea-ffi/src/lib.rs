//! C ABI for the mecidea library.
//!
//! Handles returned through out-parameters are heap allocations owned by
//! the caller; each has a matching `_free` function that accepts null.
//! Every fallible call reports a [`MecStatus`], and pointers are checked
//! for null before use. A non-null pointer to the wrong amount of memory
//! is still undefined behaviour, which is why the functions are `unsafe`.
//!
//! The generated header lives at `include/mecidea.h` and is refreshed on
//! every build.

// The safety contract is the one stated above for every function: pointers
// are null or valid for the documented sizes. Per-function Safety sections
// would repeat it verbatim into the C header.
#![allow(clippy::missing_safety_doc)]

use std::ffi::c_char;
use std::slice;

use mecidea::cfb::{CfbContext, RandContext};
use mecidea::idea::{
    decrypt_block, encrypt_block, expand_key, invert_key, Block64, Direction, Key128, SubKeys,
};
use mecidea::keygen::{generate_session_key, GaConfig, LcgParams};

/// Result code returned by the fallible bindings.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MecStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// A length or parameter was out of range.
    InvalidArgument = 2,
    /// The subkey schedule runs in the other direction.
    WrongDirection = 3,
    /// Key derivation rejected the password.
    KeygenFailure = 4,
}

/// Expanded subkey schedule for one cipher direction.
pub struct MecKeys(SubKeys);

/// Streaming cipher-feedback state.
pub struct MecCfb(CfbContext);

/// Deterministic byte generator.
pub struct MecRand(RandContext);

/// Reads a fixed-size byte array from a non-null pointer.
unsafe fn load<const N: usize>(ptr: *const u8) -> [u8; N] {
    std::ptr::read(ptr.cast::<[u8; N]>())
}

unsafe fn store<const N: usize>(ptr: *mut u8, bytes: [u8; N]) {
    std::ptr::write(ptr.cast::<[u8; N]>(), bytes);
}

/// Expands a 16-byte key into an encryption schedule. On success `*out`
/// receives a handle to release with `mecidea_keys_free`.
#[no_mangle]
pub unsafe extern "C" fn mecidea_keys_expand(key: *const u8, out: *mut *mut MecKeys) -> MecStatus {
    if key.is_null() || out.is_null() {
        return MecStatus::NullArgument;
    }
    let key = Key128::new(load::<16>(key));
    *out = Box::into_raw(Box::new(MecKeys(expand_key(&key))));
    MecStatus::Ok
}

/// Derives the schedule for the opposite direction. The input handle
/// stays valid and both must be freed independently.
#[no_mangle]
pub unsafe extern "C" fn mecidea_keys_invert(
    keys: *const MecKeys,
    out: *mut *mut MecKeys,
) -> MecStatus {
    if keys.is_null() || out.is_null() {
        return MecStatus::NullArgument;
    }
    *out = Box::into_raw(Box::new(MecKeys(invert_key(&(*keys).0))));
    MecStatus::Ok
}

/// Releases a schedule handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mecidea_keys_free(keys: *mut MecKeys) {
    if !keys.is_null() {
        drop(Box::from_raw(keys));
    }
}

/// Encrypts one 8-byte block in place using an encryption schedule.
#[no_mangle]
pub unsafe extern "C" fn mecidea_block_encrypt(
    keys: *const MecKeys,
    block: *mut u8,
) -> MecStatus {
    if keys.is_null() || block.is_null() {
        return MecStatus::NullArgument;
    }
    let keys = &(*keys).0;
    if keys.direction() != Direction::Encrypt {
        return MecStatus::WrongDirection;
    }
    store(block, encrypt_block(Block64::from_bytes(load::<8>(block)), keys).to_bytes());
    MecStatus::Ok
}

/// Decrypts one 8-byte block in place using a decryption schedule.
#[no_mangle]
pub unsafe extern "C" fn mecidea_block_decrypt(
    keys: *const MecKeys,
    block: *mut u8,
) -> MecStatus {
    if keys.is_null() || block.is_null() {
        return MecStatus::NullArgument;
    }
    let keys = &(*keys).0;
    if keys.direction() != Direction::Decrypt {
        return MecStatus::WrongDirection;
    }
    store(block, decrypt_block(Block64::from_bytes(load::<8>(block)), keys).to_bytes());
    MecStatus::Ok
}

/// Creates a cipher-feedback context from a 16-byte key and an 8-byte
/// initialisation vector. Release with `mecidea_cfb_free`.
#[no_mangle]
pub unsafe extern "C" fn mecidea_cfb_new(
    key: *const u8,
    iv: *const u8,
    out: *mut *mut MecCfb,
) -> MecStatus {
    if key.is_null() || iv.is_null() || out.is_null() {
        return MecStatus::NullArgument;
    }
    let key = Key128::new(load::<16>(key));
    *out = Box::into_raw(Box::new(MecCfb(CfbContext::new(&key, load::<8>(iv)))));
    MecStatus::Ok
}

/// Restarts a context with a fresh 8-byte initialisation vector, keeping
/// the key.
#[no_mangle]
pub unsafe extern "C" fn mecidea_cfb_reinit(cfb: *mut MecCfb, iv: *const u8) -> MecStatus {
    if cfb.is_null() || iv.is_null() {
        return MecStatus::NullArgument;
    }
    (*cfb).0.reinit(load::<8>(iv));
    MecStatus::Ok
}

/// Encrypts `len` bytes in place. Calls may be chunked at any boundary;
/// a null `data` is accepted when `len` is zero.
#[no_mangle]
pub unsafe extern "C" fn mecidea_cfb_encrypt(
    cfb: *mut MecCfb,
    data: *mut u8,
    len: usize,
) -> MecStatus {
    if cfb.is_null() {
        return MecStatus::NullArgument;
    }
    if len == 0 {
        return MecStatus::Ok;
    }
    if data.is_null() {
        return MecStatus::NullArgument;
    }
    if len > isize::MAX as usize {
        return MecStatus::InvalidArgument;
    }
    (*cfb).0.encrypt_in_place(slice::from_raw_parts_mut(data, len));
    MecStatus::Ok
}

/// Decrypts `len` bytes in place. Calls may be chunked at any boundary;
/// a null `data` is accepted when `len` is zero.
#[no_mangle]
pub unsafe extern "C" fn mecidea_cfb_decrypt(
    cfb: *mut MecCfb,
    data: *mut u8,
    len: usize,
) -> MecStatus {
    if cfb.is_null() {
        return MecStatus::NullArgument;
    }
    if len == 0 {
        return MecStatus::Ok;
    }
    if data.is_null() {
        return MecStatus::NullArgument;
    }
    if len > isize::MAX as usize {
        return MecStatus::InvalidArgument;
    }
    (*cfb).0.decrypt_in_place(slice::from_raw_parts_mut(data, len));
    MecStatus::Ok
}

/// Releases a cipher-feedback context. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mecidea_cfb_free(cfb: *mut MecCfb) {
    if !cfb.is_null() {
        drop(Box::from_raw(cfb));
    }
}

/// Creates a deterministic byte generator from a 16-byte key and an
/// 8-byte seed. Release with `mecidea_rand_free`.
#[no_mangle]
pub unsafe extern "C" fn mecidea_rand_new(
    key: *const u8,
    seed: *const u8,
    out: *mut *mut MecRand,
) -> MecStatus {
    if key.is_null() || seed.is_null() || out.is_null() {
        return MecStatus::NullArgument;
    }
    let key = Key128::new(load::<16>(key));
    *out = Box::into_raw(Box::new(MecRand(RandContext::new(&key, load::<8>(seed)))));
    MecStatus::Ok
}

/// Writes the next generated byte to `*out`.
#[no_mangle]
pub unsafe extern "C" fn mecidea_rand_byte(rng: *mut MecRand, out: *mut u8) -> MecStatus {
    if rng.is_null() || out.is_null() {
        return MecStatus::NullArgument;
    }
    *out = (*rng).0.next_byte();
    MecStatus::Ok
}

/// Fills `len` bytes with generator output; a null `data` is accepted
/// when `len` is zero.
#[no_mangle]
pub unsafe extern "C" fn mecidea_rand_fill(
    rng: *mut MecRand,
    data: *mut u8,
    len: usize,
) -> MecStatus {
    if rng.is_null() {
        return MecStatus::NullArgument;
    }
    if len == 0 {
        return MecStatus::Ok;
    }
    if data.is_null() {
        return MecStatus::NullArgument;
    }
    if len > isize::MAX as usize {
        return MecStatus::InvalidArgument;
    }
    (*rng).0.fill(slice::from_raw_parts_mut(data, len));
    MecStatus::Ok
}

/// Releases a byte generator. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mecidea_rand_free(rng: *mut MecRand) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

/// Derives a 16-byte session key from a password of `password_len` bytes,
/// using the default evolution parameters with the given stream seed. The
/// password must be at least 8 printable ASCII bytes. Writes the key to
/// `out_key` on success.
#[no_mangle]
pub unsafe extern "C" fn mecidea_session_key(
    password: *const u8,
    password_len: usize,
    lcg_seed: u64,
    out_key: *mut u8,
) -> MecStatus {
    if password.is_null() || out_key.is_null() {
        return MecStatus::NullArgument;
    }
    if password_len > isize::MAX as usize {
        return MecStatus::InvalidArgument;
    }
    let password = slice::from_raw_parts(password, password_len);
    let config = GaConfig::new(LcgParams::default_with_seed(lcg_seed));
    match generate_session_key(password, &config) {
        Ok(key) => {
            store(out_key, *key.as_bytes());
            MecStatus::Ok
        }
        Err(_) => MecStatus::KeygenFailure,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mecidea_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
