/* C interface to the mecidea cipher toolkit. */

#ifndef MECIDEA_H
#define MECIDEA_H

/* Generated by cbindgen from the mecidea-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code returned by the fallible bindings.
typedef enum MecStatus {
  // The call succeeded.
  MEC_STATUS_OK = 0,
  // A required pointer was null.
  MEC_STATUS_NULL_ARGUMENT = 1,
  // A length or parameter was out of range.
  MEC_STATUS_INVALID_ARGUMENT = 2,
  // The subkey schedule runs in the other direction.
  MEC_STATUS_WRONG_DIRECTION = 3,
  // Key derivation rejected the password.
  MEC_STATUS_KEYGEN_FAILURE = 4,
} MecStatus;

// Streaming cipher-feedback state.
typedef struct MecCfb MecCfb;

// Expanded subkey schedule for one cipher direction.
typedef struct MecKeys MecKeys;

// Deterministic byte generator.
typedef struct MecRand MecRand;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Expands a 16-byte key into an encryption schedule. On success `*out`
// receives a handle to release with `mecidea_keys_free`.
enum MecStatus mecidea_keys_expand(const uint8_t *key, struct MecKeys **out);

// Derives the schedule for the opposite direction. The input handle
// stays valid and both must be freed independently.
enum MecStatus mecidea_keys_invert(const struct MecKeys *keys, struct MecKeys **out);

// Releases a schedule handle. Null is ignored.
void mecidea_keys_free(struct MecKeys *keys);

// Encrypts one 8-byte block in place using an encryption schedule.
enum MecStatus mecidea_block_encrypt(const struct MecKeys *keys, uint8_t *block);

// Decrypts one 8-byte block in place using a decryption schedule.
enum MecStatus mecidea_block_decrypt(const struct MecKeys *keys, uint8_t *block);

// Creates a cipher-feedback context from a 16-byte key and an 8-byte
// initialisation vector. Release with `mecidea_cfb_free`.
enum MecStatus mecidea_cfb_new(const uint8_t *key, const uint8_t *iv, struct MecCfb **out);

// Restarts a context with a fresh 8-byte initialisation vector, keeping
// the key.
enum MecStatus mecidea_cfb_reinit(struct MecCfb *cfb, const uint8_t *iv);

// Encrypts `len` bytes in place. Calls may be chunked at any boundary;
// a null `data` is accepted when `len` is zero.
enum MecStatus mecidea_cfb_encrypt(struct MecCfb *cfb, uint8_t *data, size_t len);

// Decrypts `len` bytes in place. Calls may be chunked at any boundary;
// a null `data` is accepted when `len` is zero.
enum MecStatus mecidea_cfb_decrypt(struct MecCfb *cfb, uint8_t *data, size_t len);

// Releases a cipher-feedback context. Null is ignored.
void mecidea_cfb_free(struct MecCfb *cfb);

// Creates a deterministic byte generator from a 16-byte key and an
// 8-byte seed. Release with `mecidea_rand_free`.
enum MecStatus mecidea_rand_new(const uint8_t *key, const uint8_t *seed, struct MecRand **out);

// Writes the next generated byte to `*out`.
enum MecStatus mecidea_rand_byte(struct MecRand *rng, uint8_t *out);

// Fills `len` bytes with generator output; a null `data` is accepted
// when `len` is zero.
enum MecStatus mecidea_rand_fill(struct MecRand *rng, uint8_t *data, size_t len);

// Releases a byte generator. Null is ignored.
void mecidea_rand_free(struct MecRand *rng);

// Derives a 16-byte session key from a password of `password_len` bytes,
// using the default evolution parameters with the given stream seed. The
// password must be at least 8 printable ASCII bytes. Writes the key to
// `out_key` on success.
enum MecStatus mecidea_session_key(const uint8_t *password,
                                   size_t password_len,
                                   uint64_t lcg_seed,
                                   uint8_t *out_key);

// Library version as a static NUL-terminated string.
const char *mecidea_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MECIDEA_H */
