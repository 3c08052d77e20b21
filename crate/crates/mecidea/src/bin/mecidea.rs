//! Command-line front end: key derivation, block and stream encryption,
//! registry operations, a TCP server/client pair, and an interactive demo.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 cipher or key
//! derivation failure, 4 registry error, 5 transport error.

use clap::{Args, Parser, Subcommand};
use mecidea::cfb::{CfbContext, RandContext};
use mecidea::config::Config;
use mecidea::idea::{decrypt_block, encrypt_block, expand_key, invert_key, Block64, Key128};
use mecidea::keygen::{
    coded_array, evolve, evolve_from, session_key_from_coded, GaConfig, Lcg, LcgParams,
    LocusPolicy, Population, DEFAULT_GENERATIONS, DEFAULT_LCG_INCREMENT, DEFAULT_LCG_MODULUS,
    DEFAULT_LCG_MULTIPLIER, DEFAULT_POPULATION_SIZE, DEFAULT_WIDTH,
};
use mecidea::net::{self, Request, Response, Server};
use mecidea::registry::{CitizenRecord, RegistryStore, StatusReport, FACILITY_VOTING};
use std::io::Write as _;
use std::path::PathBuf;

/// Environment variable consulted as a key source.
const KEY_ENV_VAR: &str = "MECIDEA_KEY";

/// Seed used when neither a flag nor the config file provides one.
const DEFAULT_LCG_SEED: u64 = 2272;

#[derive(Parser)]
#[command(
    name = "mecidea",
    version,
    about = "IDEA cipher toolkit with password-derived session keys and an encrypted card registry"
)]
struct Cli {
    /// Path to a key = value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive a 128-bit session key from a password and print it as hex.
    Keygen(KeygenArgs),
    /// Encrypt one block (hex in, hex out) or a whole file.
    Encrypt(CryptArgs),
    /// Decrypt one block (hex in, hex out) or a whole file.
    Decrypt(CryptArgs),
    /// Operate on a local registry store file.
    Card {
        #[command(subcommand)]
        op: CardOp,
    },
    /// Serve a registry store over TCP, one frame per command.
    Serve(ServeArgs),
    /// Send one registry command to a running server.
    Send {
        #[command(subcommand)]
        op: SendOp,
    },
    /// Walk one 8-byte message through encryption and back, interactively.
    Demo(DemoArgs),
}

/// Genetic-algorithm parameters. Flags override the config file; defaults
/// fill the rest (a=1664525, c=1013904223, m=2^32, seed=2272, population
/// 10, width 128, generations 10, locus lcg, selection off).
#[derive(Args)]
struct GaArgs {
    /// LCG multiplier.
    #[arg(long, value_name = "N")]
    lcg_a: Option<u64>,
    /// LCG increment.
    #[arg(long, value_name = "N")]
    lcg_c: Option<u64>,
    /// LCG modulus.
    #[arg(long, value_name = "N")]
    lcg_m: Option<u64>,
    /// LCG seed. Both sides of a connection must agree on it.
    #[arg(long, value_name = "N")]
    lcg_seed: Option<u64>,
    /// Chromosomes per generation.
    #[arg(long, value_name = "N")]
    population_size: Option<usize>,
    /// Chromosome width in bits (1-128).
    #[arg(long, value_name = "BITS")]
    width: Option<u32>,
    /// Generations accumulated into the genetic array.
    #[arg(long, value_name = "N")]
    generations: Option<u32>,
    /// Crossover/mutation locus policy: "lcg" or "fixed:<n>".
    #[arg(long, value_name = "POLICY")]
    locus: Option<String>,
    /// Fitness-based selection: "on" or "off".
    #[arg(long, value_name = "on|off")]
    selection: Option<String>,
    /// Skip evolution and mix these digits into the password directly
    /// (comma separated). Meant for fixed test vectors.
    #[arg(long, value_name = "DIGITS")]
    coded_array: Option<String>,
    /// Inject these values as generation 1 instead of seeding from the
    /// LCG (comma separated). Meant for fixed test vectors.
    #[arg(long, value_name = "VALUES")]
    population: Option<String>,
}

impl GaArgs {
    fn any_set(&self) -> bool {
        self.lcg_a.is_some()
            || self.lcg_c.is_some()
            || self.lcg_m.is_some()
            || self.lcg_seed.is_some()
            || self.population_size.is_some()
            || self.width.is_some()
            || self.generations.is_some()
            || self.locus.is_some()
            || self.selection.is_some()
            || self.coded_array.is_some()
            || self.population.is_some()
    }
}

/// Password input: a string, or raw byte values for test vectors.
#[derive(Args)]
struct PasswordArgs {
    /// Password to derive the key from (at least 8 printable characters).
    #[arg(long, value_name = "STRING")]
    password: Option<String>,
    /// Password as comma-separated byte values instead of a string.
    #[arg(long, value_name = "BYTES", conflicts_with = "password")]
    password_bytes: Option<String>,
}

impl PasswordArgs {
    fn bytes(&self) -> Result<Option<Vec<u8>>, CliError> {
        if let Some(p) = &self.password {
            return Ok(Some(p.clone().into_bytes()));
        }
        if let Some(list) = &self.password_bytes {
            return Ok(Some(parse_list::<u8>(list, "--password-bytes")?));
        }
        Ok(None)
    }
}

#[derive(Args)]
struct KeygenArgs {
    #[command(flatten)]
    password: PasswordArgs,
    #[command(flatten)]
    ga: GaArgs,
}

/// Where the session key comes from. Exactly one source must resolve:
/// --key, --password/--password-bytes, a key in the config file, or the
/// MECIDEA_KEY environment variable.
#[derive(Args)]
struct KeySource {
    /// Session key as 32 hex characters.
    #[arg(long, value_name = "HEX")]
    key: Option<String>,
    #[command(flatten)]
    password: PasswordArgs,
    #[command(flatten)]
    ga: GaArgs,
}

#[derive(Args)]
struct CryptArgs {
    #[command(flatten)]
    key: KeySource,
    /// One 64-bit block as 16 hex characters, written back as hex.
    #[arg(long, value_name = "HEX", conflicts_with_all = ["input", "output"])]
    block: Option<String>,
    /// Input file for stream mode.
    #[arg(long, value_name = "PATH", requires = "output")]
    input: Option<PathBuf>,
    /// Output file for stream mode. Encrypted files start with the 8-byte IV.
    #[arg(long, value_name = "PATH", requires = "input")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StoreArgs {
    #[command(flatten)]
    key: KeySource,
    /// Registry store file (or set store in the config file).
    #[arg(long, value_name = "PATH")]
    store: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CardOp {
    /// Create a record and print it, unique id included.
    Issue {
        #[command(flatten)]
        common: StoreArgs,
        /// Card holder name, 1-64 printable characters.
        #[arg(long)]
        name: String,
        /// Card holder age.
        #[arg(long)]
        age: u8,
    },
    /// Grant the voting facility to a card.
    Grant {
        #[command(flatten)]
        common: StoreArgs,
        /// Unique id as 16 hex characters.
        #[arg(long, value_name = "HEX")]
        id: String,
    },
    /// Report a card's record, revoked ones included.
    Check {
        #[command(flatten)]
        common: StoreArgs,
        #[arg(long, value_name = "HEX")]
        id: String,
    },
    /// Revoke a card and clear its facilities.
    Revoke {
        #[command(flatten)]
        common: StoreArgs,
        #[arg(long, value_name = "HEX")]
        id: String,
    },
}

#[derive(Args)]
struct ServeArgs {
    #[command(flatten)]
    key: KeySource,
    /// Address to listen on, host:port (or set endpoint in the config file).
    #[arg(long, value_name = "ADDR")]
    endpoint: Option<String>,
    /// Registry store file (or set store in the config file).
    #[arg(long, value_name = "PATH")]
    store: Option<PathBuf>,
}

#[derive(Args)]
struct SendCommon {
    #[command(flatten)]
    key: KeySource,
    /// Server address, host:port (or set endpoint in the config file).
    #[arg(long, value_name = "ADDR")]
    endpoint: Option<String>,
}

#[derive(Subcommand)]
enum SendOp {
    /// Ask the server to issue a card.
    Issue {
        #[command(flatten)]
        common: SendCommon,
        #[arg(long)]
        name: String,
        #[arg(long)]
        age: u8,
    },
    /// Ask the server to grant the voting facility.
    Grant {
        #[command(flatten)]
        common: SendCommon,
        #[arg(long, value_name = "HEX")]
        id: String,
    },
    /// Ask the server for a card's record.
    Check {
        #[command(flatten)]
        common: SendCommon,
        #[arg(long, value_name = "HEX")]
        id: String,
    },
    /// Ask the server to revoke a card.
    Revoke {
        #[command(flatten)]
        common: SendCommon,
        #[arg(long, value_name = "HEX")]
        id: String,
    },
}

#[derive(Args)]
struct DemoArgs {
    #[command(flatten)]
    key: KeySource,
}

enum CliError {
    Usage(String),
    Crypto(String),
    Registry(String),
    Transport(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Crypto(m)
            | CliError::Registry(m)
            | CliError::Transport(m) => m,
        }
    }

    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Crypto(_) => 3,
            CliError::Registry(_) => 4,
            CliError::Transport(_) => 5,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(|e| usage(e.to_string()))?,
        None => Config::default(),
    };
    match cli.command {
        Cmd::Keygen(args) => cmd_keygen(&args, &config),
        Cmd::Encrypt(args) => cmd_crypt(&args, &config, true),
        Cmd::Decrypt(args) => cmd_crypt(&args, &config, false),
        Cmd::Card { op } => cmd_card(&op, &config),
        Cmd::Serve(args) => cmd_serve(&args, &config),
        Cmd::Send { op } => cmd_send(&op, &config),
        Cmd::Demo(args) => cmd_demo(&args, &config),
    }
}

// ---- key resolution ----

fn derive_key(password: &[u8], ga: &GaArgs, config: &Config) -> Result<Key128, CliError> {
    let crypto = |e: mecidea::keygen::KeygenError| CliError::Crypto(e.to_string());

    // The coded-array fixture bypasses evolution entirely.
    if let Some(list) = &ga.coded_array {
        let digits = parse_list::<u8>(list, "--coded-array")?;
        return session_key_from_coded(password, &digits).map_err(crypto);
    }

    let lcg = LcgParams::new(
        ga.lcg_a.or(config.lcg_a).unwrap_or(DEFAULT_LCG_MULTIPLIER),
        ga.lcg_c.or(config.lcg_c).unwrap_or(DEFAULT_LCG_INCREMENT),
        ga.lcg_m.or(config.lcg_m).unwrap_or(DEFAULT_LCG_MODULUS),
        ga.lcg_seed.or(config.lcg_seed).unwrap_or(DEFAULT_LCG_SEED),
    )
    .map_err(crypto)?;
    let width = ga.width.or(config.width).unwrap_or(DEFAULT_WIDTH);
    let generations = ga
        .generations
        .or(config.generations)
        .unwrap_or(DEFAULT_GENERATIONS);
    let locus = match &ga.locus {
        Some(text) => parse_locus_flag(text)?,
        None => config.locus.unwrap_or(LocusPolicy::LcgDriven),
    };
    let selection = match ga.selection.as_deref() {
        Some("on") => true,
        Some("off") => false,
        Some(other) => return Err(usage(format!("--selection must be on or off, got {other:?}"))),
        None => config.selection.unwrap_or(false),
    };

    let genetic = if let Some(list) = &ga.population {
        let values = parse_list::<u128>(list, "--population")?;
        let initial = Population::from_values(&values, width).map_err(crypto)?;
        let mut stream = Lcg::new(lcg);
        evolve_from(initial, &mut stream, generations, locus, selection).map_err(crypto)?
    } else {
        let mut ga_config = GaConfig::new(lcg);
        ga_config.population_size = ga
            .population_size
            .or(config.population)
            .unwrap_or(DEFAULT_POPULATION_SIZE);
        ga_config.width = width;
        ga_config.generations = generations;
        ga_config.locus = locus;
        ga_config.selection = selection;
        evolve(&ga_config).map_err(crypto)?
    };
    let coded = coded_array(&genetic);
    session_key_from_coded(password, &coded).map_err(crypto)
}

fn parse_locus_flag(text: &str) -> Result<LocusPolicy, CliError> {
    if text == "lcg" {
        return Ok(LocusPolicy::LcgDriven);
    }
    if let Some(n) = text.strip_prefix("fixed:") {
        let locus = n
            .parse()
            .map_err(|_| usage(format!("fixed locus wants an integer, got {n:?}")))?;
        return Ok(LocusPolicy::Fixed(locus));
    }
    Err(usage(format!(
        "--locus must be \"lcg\" or \"fixed:<n>\", got {text:?}"
    )))
}

fn resolve_key(source: &KeySource, config: &Config) -> Result<Key128, CliError> {
    let password = source.password.bytes()?;
    if source.ga.any_set() && password.is_none() {
        return Err(usage(
            "derivation flags have no effect without --password or --password-bytes",
        ));
    }

    let mut found: Vec<(&str, Key128)> = Vec::new();
    if let Some(hex) = &source.key {
        let key = Key128::from_hex(hex).map_err(|e| usage(format!("--key: {e}")))?;
        found.push(("--key", key));
    }
    if let Some(bytes) = password {
        found.push(("--password", derive_key(&bytes, &source.ga, config)?));
    }
    if let Some(key) = config.key {
        found.push(("the config file", key));
    }
    if let Ok(hex) = std::env::var(KEY_ENV_VAR) {
        let key =
            Key128::from_hex(&hex).map_err(|e| usage(format!("{KEY_ENV_VAR}: {e}")))?;
        found.push((KEY_ENV_VAR, key));
    }

    match found.len() {
        0 => Err(usage(format!(
            "no key source: pass --key or --password, set key in the config file, or set {KEY_ENV_VAR}"
        ))),
        1 => Ok(found[0].1),
        _ => {
            let names: Vec<&str> = found.iter().map(|(name, _)| *name).collect();
            Err(usage(format!(
                "exactly one key source may be given, got {}",
                names.join(" and ")
            )))
        }
    }
}

// ---- small parsers and printers ----

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<T>()
                .map_err(|_| usage(format!("{what}: {:?} is not a valid entry", piece.trim())))
        })
        .collect()
}

fn parse_id(hex: &str, what: &str) -> Result<[u8; 8], CliError> {
    hex::decode(hex)
        .ok()
        .and_then(|bytes| <[u8; 8]>::try_from(bytes).ok())
        .ok_or_else(|| usage(format!("{what} must be 16 hex characters")))
}

fn facilities_text(facilities: u32) -> String {
    if facilities == 0 {
        "none".to_owned()
    } else if facilities == FACILITY_VOTING {
        "voting".to_owned()
    } else {
        format!("{facilities:#010x}")
    }
}

fn print_record(record: &CitizenRecord) {
    println!("serial: {}", record.serial);
    println!("name: {}", record.name);
    println!("age: {}", record.age);
    println!("facilities: {}", facilities_text(record.facilities));
    println!("status: {}", record.status.as_str());
    println!("unique id: {}", hex::encode(record.unique_id));
}

fn print_report(report: &StatusReport) {
    println!("name: {}", report.name);
    println!("age: {}", report.age);
    println!("facilities: {}", facilities_text(report.facilities));
    println!("status: {}", report.status.as_str());
}

// ---- subcommands ----

fn cmd_keygen(args: &KeygenArgs, config: &Config) -> Result<(), CliError> {
    let password = args
        .password
        .bytes()?
        .ok_or_else(|| usage("keygen needs --password or --password-bytes"))?;
    let key = derive_key(&password, &args.ga, config)?;
    println!("{}", key.to_hex());
    Ok(())
}

fn cmd_crypt(args: &CryptArgs, config: &Config, encrypting: bool) -> Result<(), CliError> {
    let key = resolve_key(&args.key, config)?;

    if let Some(block_hex) = &args.block {
        let bytes = hex::decode(block_hex)
            .ok()
            .and_then(|b| <[u8; 8]>::try_from(b).ok())
            .ok_or_else(|| usage("--block must be 16 hex characters"))?;
        let enc = expand_key(&key);
        let block = Block64::from_bytes(bytes);
        let result = if encrypting {
            encrypt_block(block, &enc)
        } else {
            decrypt_block(block, &invert_key(&enc))
        };
        println!("{}", hex::encode(result.to_bytes()));
        return Ok(());
    }

    let (Some(input), Some(output)) = (&args.input, &args.output) else {
        return Err(usage("pass --block, or --input and --output"));
    };
    let data = std::fs::read(input)
        .map_err(|e| CliError::Crypto(format!("cannot read {}: {e}", input.display())))?;
    let out_bytes = if encrypting {
        let iv = RandContext::from_clock(&key).next_block();
        let mut out = iv.to_vec();
        out.extend_from_slice(&CfbContext::new(&key, iv).encrypt(&data));
        out
    } else {
        if data.len() < 8 {
            return Err(CliError::Crypto(
                "ciphertext is shorter than its 8-byte IV".to_owned(),
            ));
        }
        let iv: [u8; 8] = data[..8].try_into().expect("length checked");
        CfbContext::new(&key, iv).decrypt(&data[8..])
    };
    std::fs::write(output, out_bytes)
        .map_err(|e| CliError::Crypto(format!("cannot write {}: {e}", output.display())))?;
    Ok(())
}

fn open_store(args: &StoreArgs, config: &Config) -> Result<RegistryStore, CliError> {
    let key = resolve_key(&args.key, config)?;
    let path = args
        .store
        .clone()
        .or_else(|| config.store.clone())
        .ok_or_else(|| usage("no store file: pass --store or set store in the config file"))?;
    RegistryStore::open(path, &key).map_err(|e| CliError::Registry(e.to_string()))
}

fn cmd_card(op: &CardOp, config: &Config) -> Result<(), CliError> {
    let registry = |e: mecidea::registry::RegistryError| CliError::Registry(e.to_string());
    match op {
        CardOp::Issue { common, name, age } => {
            let mut store = open_store(common, config)?;
            let record = store.issue_card(name, *age).map_err(registry)?;
            print_record(&record);
        }
        CardOp::Grant { common, id } => {
            let mut store = open_store(common, config)?;
            let record = store
                .set_voter_flag(parse_id(id, "--id")?)
                .map_err(registry)?;
            print_record(&record);
        }
        CardOp::Check { common, id } => {
            let store = open_store(common, config)?;
            let report = store
                .check_overall_status(parse_id(id, "--id")?)
                .map_err(registry)?;
            print_report(&report);
        }
        CardOp::Revoke { common, id } => {
            let mut store = open_store(common, config)?;
            let record = store.revoke(parse_id(id, "--id")?).map_err(registry)?;
            print_record(&record);
        }
    }
    Ok(())
}

fn cmd_serve(args: &ServeArgs, config: &Config) -> Result<(), CliError> {
    let key = resolve_key(&args.key, config)?;
    let path = args
        .store
        .clone()
        .or_else(|| config.store.clone())
        .ok_or_else(|| usage("no store file: pass --store or set store in the config file"))?;
    let endpoint = args
        .endpoint
        .clone()
        .or_else(|| config.endpoint.clone())
        .ok_or_else(|| usage("no endpoint: pass --endpoint or set it in the config file"))?;

    let store = RegistryStore::open(path, &key).map_err(|e| CliError::Registry(e.to_string()))?;
    let server =
        Server::bind(&endpoint, store, &key).map_err(|e| CliError::Transport(e.to_string()))?;
    // The port in the printed address is the bound one, so listening on
    // port 0 still tells the reader where to connect.
    println!("listening on {}", server.local_addr());
    std::io::stdout()
        .flush()
        .map_err(|e| CliError::Transport(e.to_string()))?;
    server.run().map_err(|e| CliError::Transport(e.to_string()))
}

fn cmd_send(op: &SendOp, config: &Config) -> Result<(), CliError> {
    let (common, request) = match op {
        SendOp::Issue { common, name, age } => (
            common,
            Request::Issue {
                name: name.clone(),
                age: *age,
            },
        ),
        SendOp::Grant { common, id } => (
            common,
            Request::Grant {
                unique_id: parse_id(id, "--id")?,
            },
        ),
        SendOp::Check { common, id } => (
            common,
            Request::Check {
                unique_id: parse_id(id, "--id")?,
            },
        ),
        SendOp::Revoke { common, id } => (
            common,
            Request::Revoke {
                unique_id: parse_id(id, "--id")?,
            },
        ),
    };
    let key = resolve_key(&common.key, config)?;
    let endpoint = common
        .endpoint
        .clone()
        .or_else(|| config.endpoint.clone())
        .ok_or_else(|| usage("no endpoint: pass --endpoint or set it in the config file"))?;

    let response = net::request(&endpoint, &key, &request)
        .map_err(|e| CliError::Transport(e.to_string()))?;
    match response {
        Response::Issued { unique_id } => {
            println!("unique id: {}", hex::encode(unique_id));
            Ok(())
        }
        Response::Report {
            name,
            age,
            facilities,
            status,
        } => {
            print_report(&StatusReport {
                name,
                age,
                facilities,
                status,
            });
            Ok(())
        }
        Response::Error { code, message } => {
            let text = format!("server error {code}: {message}");
            // Registry-level refusals and protocol-level failures exit
            // through different codes.
            if code <= net::STATUS_INVALID_ARGUMENT {
                Err(CliError::Registry(text))
            } else {
                Err(CliError::Transport(text))
            }
        }
    }
}

// ---- demo ----

fn prompt_line(text: &str) -> Result<String, CliError> {
    print!("{text}");
    std::io::stdout()
        .flush()
        .map_err(|e| usage(e.to_string()))?;
    let mut line = String::new();
    let read = std::io::stdin()
        .read_line(&mut line)
        .map_err(|e| usage(e.to_string()))?;
    if read == 0 {
        return Err(usage("input ended"));
    }
    Ok(line.trim().to_owned())
}

fn prompt_age() -> Result<u8, CliError> {
    loop {
        let line = prompt_line("Enter your age: ")?;
        match line.parse() {
            Ok(age) => return Ok(age),
            Err(_) => println!("age must be a number between 0 and 255"),
        }
    }
}

fn prompt_message_bytes() -> Result<[u8; 8], CliError> {
    loop {
        let line =
            prompt_line("Enter the decimal equivalent of 8 bits (0-255), separated by spaces: ")?;
        let parsed: Result<Vec<u8>, String> = line
            .split_whitespace()
            .map(|word| {
                word.parse::<u8>()
                    .map_err(|_| format!("{word:?} is not a number between 0 and 255"))
            })
            .collect();
        match parsed {
            Ok(bytes) => match <[u8; 8]>::try_from(bytes) {
                Ok(eight) => return Ok(eight),
                Err(wrong) => println!("expected 8 values, got {}", wrong.len()),
            },
            Err(reason) => println!("{reason}"),
        }
    }
}

fn format_bytes(bytes: &[u8; 8]) -> String {
    bytes
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_demo(args: &DemoArgs, config: &Config) -> Result<(), CliError> {
    let key = resolve_key(&args.key, config)?;
    let name = prompt_line("Enter your name: ")?;
    let age = prompt_age()?;
    let message = prompt_message_bytes()?;

    let enc = expand_key(&key);
    let ciphertext = encrypt_block(Block64::from_bytes(message), &enc).to_bytes();
    let decrypted = decrypt_block(Block64::from_bytes(ciphertext), &invert_key(&enc)).to_bytes();
    if decrypted != message {
        return Err(CliError::Crypto(
            "decryption did not restore the original message".to_owned(),
        ));
    }

    println!("orig message: {}", format_bytes(&message));
    println!("enc. message: {}", format_bytes(&ciphertext));
    println!("dec. message: {}", format_bytes(&decrypted));
    println!("Name: {name}");
    println!("Age: {age}");
    Ok(())
}
