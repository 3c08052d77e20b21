//! The citizen-card register: records with encrypted unique IDs, facility
//! grants, status checks and revocation, persisted as a plain text file.
//!
//! A record's public handle is its unique ID, the block-cipher encryption
//! of its serial number under the registry key. Holders present the ID;
//! the registry decrypts it back to a serial and looks the record up, so a
//! forged ID is rejected unless it happens to decrypt to a live serial.
//! The key itself is never written to the store file.

use crate::idea::{decrypt_block, encrypt_block, expand_key, invert_key, Block64, Key128, SubKeys};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Facility flag: the right to vote. Higher bits are reserved.
pub const FACILITY_VOTING: u32 = 1;

/// Longest accepted name, in bytes.
pub const MAX_NAME_LEN: usize = 64;
/// Highest accepted age.
pub const MAX_AGE: u8 = 150;

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("name must be 1..={MAX_NAME_LEN} printable ascii bytes")]
    InvalidName,
    #[error("age must be at most {MAX_AGE}, got {0}")]
    InvalidAge(u8),
    #[error("unknown unique id")]
    UnknownUniqueId,
    #[error("record is revoked")]
    RecordRevoked,
    #[error("store line {line}: {reason}")]
    MalformedStore { line: usize, reason: String },
    #[error("record {serial}: stored unique id does not match the registry key")]
    KeyMismatch { serial: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Active,
    Revoked,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Active => "active",
            Status::Revoked => "revoked",
        }
    }
}

/// One card holder. `unique_id` is the ciphertext of `serial` and is what
/// the holder presents for lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitizenRecord {
    pub serial: u64,
    pub name: String,
    pub age: u8,
    pub facilities: u32,
    pub status: Status,
    pub unique_id: [u8; 8],
}

impl CitizenRecord {
    /// Clears everything but the identity fields: empty name, age 0, no
    /// facilities, active status. Idempotent.
    pub fn set_all_defaults(&mut self) {
        self.name.clear();
        self.age = 0;
        self.facilities = 0;
        self.status = Status::Active;
    }

    pub fn has_voting_right(&self) -> bool {
        self.facilities & FACILITY_VOTING != 0
    }
}

/// What a status check returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatusReport {
    pub name: String,
    pub age: u8,
    pub facilities: u32,
    pub status: Status,
}

/// A file-backed collection of citizen records under one registry key.
///
/// All records live in memory; every mutation rewrites the file through a
/// temporary sibling so a crash cannot leave a half-written store.
pub struct RegistryStore {
    path: PathBuf,
    enc_keys: SubKeys,
    dec_keys: SubKeys,
    records: Vec<CitizenRecord>,
}

impl RegistryStore {
    /// Opens the store at `path`, loading existing records. A missing file
    /// is an empty registry; the file appears on the first write.
    pub fn open(path: impl Into<PathBuf>, key: &Key128) -> Result<Self, RegistryError> {
        let path = path.into();
        let enc_keys = expand_key(key);
        let dec_keys = invert_key(&enc_keys);
        let records = match fs::read_to_string(&path) {
            Ok(text) => parse_store(&text, &enc_keys)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(Self {
            path,
            enc_keys,
            dec_keys,
            records,
        })
    }

    pub fn records(&self) -> &[CitizenRecord] {
        &self.records
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Creates a record for `name`/`age`, assigns the next serial, and
    /// persists. The returned record carries the holder's unique ID.
    pub fn issue_card(&mut self, name: &str, age: u8) -> Result<CitizenRecord, RegistryError> {
        validate_name(name)?;
        if age > MAX_AGE {
            return Err(RegistryError::InvalidAge(age));
        }
        // Serials count up from 1 and are never reused.
        let serial = self.records.iter().map(|r| r.serial).max().unwrap_or(0) + 1;
        let unique_id = encrypt_block(Block64::from_u64(serial), &self.enc_keys).to_bytes();
        let record = CitizenRecord {
            serial,
            name: name.to_owned(),
            age,
            facilities: 0,
            status: Status::Active,
            unique_id,
        };
        self.records.push(record.clone());
        self.save()?;
        Ok(record)
    }

    /// Grants the voting right to an active record. Idempotent.
    pub fn set_voter_flag(&mut self, unique_id: [u8; 8]) -> Result<CitizenRecord, RegistryError> {
        let index = self.resolve_active(unique_id)?;
        self.records[index].facilities |= FACILITY_VOTING;
        self.save()?;
        Ok(self.records[index].clone())
    }

    /// Read-only report of name, age, facilities and status. Revoked
    /// records still report (as revoked); unknown IDs are rejected.
    pub fn check_overall_status(&self, unique_id: [u8; 8]) -> Result<StatusReport, RegistryError> {
        let record = &self.records[self.resolve(unique_id)?];
        Ok(StatusReport {
            name: record.name.clone(),
            age: record.age,
            facilities: record.facilities,
            status: record.status,
        })
    }

    /// Revokes a record: clears facilities and marks it revoked, for good.
    pub fn revoke(&mut self, unique_id: [u8; 8]) -> Result<CitizenRecord, RegistryError> {
        let index = self.resolve_active(unique_id)?;
        self.records[index].status = Status::Revoked;
        self.records[index].facilities = 0;
        self.save()?;
        Ok(self.records[index].clone())
    }

    fn resolve(&self, unique_id: [u8; 8]) -> Result<usize, RegistryError> {
        let serial = decrypt_block(Block64::from_bytes(unique_id), &self.dec_keys).to_u64();
        self.records
            .iter()
            .position(|r| r.serial == serial)
            .ok_or(RegistryError::UnknownUniqueId)
    }

    fn resolve_active(&self, unique_id: [u8; 8]) -> Result<usize, RegistryError> {
        let index = self.resolve(unique_id)?;
        if self.records[index].status == Status::Revoked {
            return Err(RegistryError::RecordRevoked);
        }
        Ok(index)
    }

    fn save(&self) -> Result<(), RegistryError> {
        let mut text = String::new();
        for r in &self.records {
            text.push_str(&format_record(r));
            text.push('\n');
        }
        let tmp = self.path.with_extension("tmp");
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(text.as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}

fn validate_name(name: &str) -> Result<(), RegistryError> {
    let bytes = name.as_bytes();
    if bytes.is_empty() || bytes.len() > MAX_NAME_LEN {
        return Err(RegistryError::InvalidName);
    }
    if bytes.iter().any(|b| !(0x20..=0x7e).contains(b)) {
        return Err(RegistryError::InvalidName);
    }
    Ok(())
}

// One record per line: serial,hex(name),age,facilities_hex,uid_hex,status
// with lowercase hex and no spaces.
fn format_record(r: &CitizenRecord) -> String {
    format!(
        "{},{},{},{:08x},{},{}",
        r.serial,
        hex::encode(r.name.as_bytes()),
        r.age,
        r.facilities,
        hex::encode(r.unique_id),
        r.status.as_str()
    )
}

fn parse_store(text: &str, enc_keys: &SubKeys) -> Result<Vec<CitizenRecord>, RegistryError> {
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let record = parse_record(line).map_err(|reason| RegistryError::MalformedStore {
            line: line_no,
            reason,
        })?;
        // The stored unique id must be the serial encrypted under the key
        // this store was opened with; a mismatch means the wrong key.
        let expected = encrypt_block(Block64::from_u64(record.serial), enc_keys).to_bytes();
        if record.unique_id != expected {
            return Err(RegistryError::KeyMismatch {
                serial: record.serial,
            });
        }
        if records.iter().any(|r: &CitizenRecord| r.serial == record.serial) {
            return Err(RegistryError::MalformedStore {
                line: line_no,
                reason: format!("duplicate serial {}", record.serial),
            });
        }
        records.push(record);
    }
    Ok(records)
}

fn parse_record(line: &str) -> Result<CitizenRecord, String> {
    let fields: Vec<&str> = line.split(',').collect();
    let [serial, name_hex, age, facilities_hex, uid_hex, status] = fields.as_slice() else {
        return Err(format!("expected 6 fields, got {}", fields.len()));
    };
    let serial: u64 = serial.parse().map_err(|_| "bad serial".to_owned())?;
    let name_bytes = hex::decode(name_hex).map_err(|_| "bad name hex".to_owned())?;
    let name = String::from_utf8(name_bytes).map_err(|_| "name is not utf-8".to_owned())?;
    let age: u8 = age.parse().map_err(|_| "bad age".to_owned())?;
    if age > MAX_AGE {
        return Err(format!("age {age} out of range"));
    }
    if facilities_hex.len() != 8 {
        return Err("facilities field must be 8 hex chars".to_owned());
    }
    let facilities_bytes: [u8; 4] = hex::decode(facilities_hex)
        .map_err(|_| "bad facilities hex".to_owned())?
        .try_into()
        .expect("length checked above");
    let facilities = u32::from_be_bytes(facilities_bytes);
    let unique_id: [u8; 8] = hex::decode(uid_hex)
        .map_err(|_| "bad unique id hex".to_owned())?
        .try_into()
        .map_err(|_| "unique id must be 8 bytes".to_owned())?;
    let status = match *status {
        "active" => Status::Active,
        "revoked" => Status::Revoked,
        other => return Err(format!("unknown status {other:?}")),
    };
    Ok(CitizenRecord {
        serial,
        name,
        age,
        facilities,
        status,
        unique_id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use tempfile::TempDir;

    fn test_key() -> Key128 {
        Key128::from_hex("00112233445566778899aabbccddeeff").unwrap()
    }

    fn open_fresh(dir: &TempDir) -> RegistryStore {
        RegistryStore::open(dir.path().join("store.mec"), &test_key()).unwrap()
    }

    #[test]
    fn defaults_reset_everything_but_identity() {
        let mut record = CitizenRecord {
            serial: 9,
            name: "someone".into(),
            age: 44,
            facilities: FACILITY_VOTING,
            status: Status::Revoked,
            unique_id: [1; 8],
        };
        record.set_all_defaults();
        assert_eq!(record.name, "");
        assert_eq!(record.age, 0);
        assert_eq!(record.facilities, 0);
        assert_eq!(record.status, Status::Active);
        assert_eq!(record.serial, 9);
        let once = record.clone();
        record.set_all_defaults();
        assert_eq!(record, once);
    }

    #[test]
    fn first_card_gets_serial_one_and_a_decryptable_id() {
        let dir = TempDir::new().unwrap();
        let mut store = open_fresh(&dir);
        let record = store.issue_card("Abhishek Roy", 27).unwrap();
        assert_eq!(record.serial, 1);
        assert_eq!(record.facilities, 0);
        assert_eq!(record.status, Status::Active);

        let dec = invert_key(&expand_key(&test_key()));
        let serial = decrypt_block(Block64::from_bytes(record.unique_id), &dec).to_u64();
        assert_eq!(serial, 1);

        let report = store.check_overall_status(record.unique_id).unwrap();
        assert_eq!(report.name, "Abhishek Roy");
        assert_eq!(report.age, 27);
    }

    #[test]
    fn issue_validates_inputs() {
        let dir = TempDir::new().unwrap();
        let mut store = open_fresh(&dir);
        assert!(matches!(
            store.issue_card("", 30),
            Err(RegistryError::InvalidName)
        ));
        assert!(matches!(
            store.issue_card(&"x".repeat(65), 30),
            Err(RegistryError::InvalidName)
        ));
        assert!(matches!(
            store.issue_card("tab\tname", 30),
            Err(RegistryError::InvalidName)
        ));
        assert!(matches!(
            store.issue_card("fine", 151),
            Err(RegistryError::InvalidAge(151))
        ));
    }

    #[test]
    fn grant_check_revoke_lifecycle() {
        let dir = TempDir::new().unwrap();
        let mut store = open_fresh(&dir);
        let id = store.issue_card("Holder", 40).unwrap().unique_id;

        assert_eq!(store.check_overall_status(id).unwrap().facilities, 0);
        let granted = store.set_voter_flag(id).unwrap();
        assert!(granted.has_voting_right());
        // Granting twice changes nothing.
        let again = store.set_voter_flag(id).unwrap();
        assert_eq!(again.facilities, granted.facilities);

        let revoked = store.revoke(id).unwrap();
        assert_eq!(revoked.status, Status::Revoked);
        assert_eq!(revoked.facilities, 0);

        let report = store.check_overall_status(id).unwrap();
        assert_eq!(report.status, Status::Revoked);
        assert_eq!(report.facilities, 0);

        assert!(matches!(store.revoke(id), Err(RegistryError::RecordRevoked)));
        assert!(matches!(
            store.set_voter_flag(id),
            Err(RegistryError::RecordRevoked)
        ));
    }

    #[test]
    fn revoke_leaves_other_records_alone() {
        let dir = TempDir::new().unwrap();
        let mut store = open_fresh(&dir);
        let a = store.issue_card("First", 30).unwrap();
        let b = store.issue_card("Second", 31).unwrap();
        let c = store.issue_card("Third", 32).unwrap();
        store.set_voter_flag(b.unique_id).unwrap();

        let before: Vec<CitizenRecord> = store
            .records()
            .iter()
            .filter(|r| r.serial != a.serial)
            .cloned()
            .collect();
        store.revoke(a.unique_id).unwrap();
        let after: Vec<CitizenRecord> = store
            .records()
            .iter()
            .filter(|r| r.serial != a.serial)
            .cloned()
            .collect();
        assert_eq!(before, after);
        assert_eq!(after.len(), 2);
        assert_eq!(c.serial, 3);
    }

    #[test]
    fn forged_ids_are_rejected() {
        let dir = TempDir::new().unwrap();
        let mut store = open_fresh(&dir);
        for i in 0..10 {
            store.issue_card(&format!("Holder {i}"), 20 + i).unwrap();
        }
        let mut rng = StdRng::seed_from_u64(41);
        let mut hits = 0;
        for _ in 0..1000 {
            let forged: [u8; 8] = rng.gen();
            if store.check_overall_status(forged).is_ok() {
                hits += 1;
            }
        }
        assert_eq!(hits, 0, "forged unique ids resolved to records");
    }

    #[test]
    fn store_file_round_trips_bit_exact() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("store.mec");
        let mut store = RegistryStore::open(&path, &test_key()).unwrap();
        let a = store.issue_card("Ada Lovelace", 36).unwrap();
        let b = store.issue_card("Grace Hopper", 85).unwrap();
        store.set_voter_flag(a.unique_id).unwrap();
        store.revoke(b.unique_id).unwrap();

        let bytes_on_disk = std::fs::read(&path).unwrap();
        assert_eq!(bytes_on_disk.iter().filter(|&&b| b == b'\n').count(), 2);

        let reloaded = RegistryStore::open(&path, &test_key()).unwrap();
        assert_eq!(reloaded.records(), store.records());

        // Re-saving the reloaded store reproduces the identical bytes.
        reloaded.save().unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), bytes_on_disk);
    }

    #[test]
    fn store_file_format_is_stable() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("store.mec");
        let mut store = RegistryStore::open(&path, &test_key()).unwrap();
        let record = store.issue_card("Ab", 7).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let expected = format!("1,4162,7,00000000,{},active\n", hex::encode(record.unique_id));
        assert_eq!(text, expected);
    }

    #[test]
    fn wrong_key_is_detected_on_load() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("store.mec");
        let mut store = RegistryStore::open(&path, &test_key()).unwrap();
        store.issue_card("Holder", 50).unwrap();

        let other = Key128::from_hex("ffeeddccbbaa99887766554433221100").unwrap();
        assert!(matches!(
            RegistryStore::open(&path, &other),
            Err(RegistryError::KeyMismatch { serial: 1 })
        ));
    }

    #[test]
    fn malformed_lines_are_reported_with_position() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("store.mec");
        std::fs::write(&path, "1,4162,7,00000000\n").unwrap();
        let err = RegistryStore::open(&path, &test_key()).map(|_| ()).unwrap_err();
        assert!(matches!(err, RegistryError::MalformedStore { line: 1, .. }));
    }

    #[test]
    fn missing_file_is_an_empty_registry() {
        let dir = TempDir::new().unwrap();
        let store = RegistryStore::open(dir.path().join("absent.mec"), &test_key()).unwrap();
        assert!(store.records().is_empty());
        assert!(!dir.path().join("absent.mec").exists());
    }
}
