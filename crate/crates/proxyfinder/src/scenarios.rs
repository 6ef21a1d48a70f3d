//! Synthetic scenario catalog: three small, fully enumerable instances
//! modeling classic proxy groups on mobile platforms.
//!
//! - `display_size`: a direct metrics API next to a window/view chain whose
//!   width and height readings jointly (but not individually) reveal the
//!   display-size bucket.
//! - `location`: radio and network observables (WiFi scan, cell info,
//!   Bluetooth discovery, interface addresses), each informative about the
//!   region with a per-signal coverage probability.
//! - `user_id`: a device fingerprint (locale, carrier, timezone, disk
//!   space, model, OS version) over a small user population, skewed so that
//!   combinations pin the user down while no single attribute comes close.
//!
//! The instances are parameterized structural models, not measured
//! marginals; real API names appear only as function-name strings for
//! readability. Expected solver outcomes across an alpha grid are recorded
//! in [`catalog`] and were frozen from this crate's own exact solver.

use crate::error::{Error, Result};
use crate::estimation::EstimatorConfig;
use crate::model::{Assignment, AttributeSchema, FunctionDef, JointDistribution, ProxyInstance};
use crate::rng::{derive_seed, SplitMix64};

const TAG_SCENARIO: u64 = 0x9d01_7e6a_11c9_0010;

/// Canonical scenario names accepted by `build_scenario` and the CLI.
pub const SCENARIO_NAMES: [&str; 3] = ["display_size", "location", "user_id"];

#[derive(Debug, Clone)]
pub struct DisplaySizeParams {
    /// Include the direct metrics-reading function (proxy group #1).
    pub include_direct: bool,
    /// Probability that the app window is maximized.
    pub maximized_prob: f64,
}

impl Default for DisplaySizeParams {
    fn default() -> Self {
        DisplaySizeParams {
            include_direct: true,
            maximized_prob: 0.7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocationParams {
    /// Include the direct location read (proxy group #1).
    pub include_direct: bool,
    /// Per-signal probability of being informative about the region, in
    /// order: wifi, cell, bluetooth, ip.
    pub coverage: [f64; 4],
    /// Number of geographic regions.
    pub regions: usize,
}

impl Default for LocationParams {
    fn default() -> Self {
        LocationParams {
            include_direct: true,
            coverage: [0.9, 0.95, 0.4, 0.7],
            regions: 6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct UserIdParams {
    /// Include the direct advertising-identifier read (proxy group #1).
    pub include_direct: bool,
    /// Number of users; the target entropy is `log2` of this.
    pub num_users: usize,
}

impl Default for UserIdParams {
    fn default() -> Self {
        UserIdParams {
            include_direct: true,
            num_users: 16,
        }
    }
}

/// Builds a catalog scenario by name with default parameters.
pub fn build_scenario(name: &str, seed: u64) -> Result<ProxyInstance> {
    build_scenario_variant(name, true, seed)
}

/// Builds a catalog scenario with the direct-read function included or
/// blocked; the blocked variant is where the proxy chains become the
/// answer.
pub fn build_scenario_variant(
    name: &str,
    include_direct: bool,
    seed: u64,
) -> Result<ProxyInstance> {
    match name {
        "display_size" => display_size(
            &DisplaySizeParams {
                include_direct,
                ..Default::default()
            },
            seed,
        ),
        "location" => location(
            &LocationParams {
                include_direct,
                ..Default::default()
            },
            seed,
        ),
        "user_id" => user_id(
            &UserIdParams {
                include_direct,
                ..Default::default()
            },
            seed,
        ),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

/// Display-size proxies: the direct metrics read against the
/// window/view-dimension chain. View dimensions derive deterministically
/// from the bucket and the window state (maximized windows copy the display
/// dimensions, windowed ones shrink them) and stay bucket-distinguishing
/// jointly, while width and height each leave two buckets ambiguous.
pub fn display_size(params: &DisplaySizeParams, seed: u64) -> Result<ProxyInstance> {
    if !(0.0..=1.0).contains(&params.maximized_prob) {
        return Err(Error::Input(format!(
            "maximized_prob {} outside [0, 1]",
            params.maximized_prob
        )));
    }
    let widths = [720u32, 1080, 1080, 1440];
    let heights = [1920u32, 1920, 2400, 2400];
    let buckets: Vec<String> = (0..4)
        .map(|b| format!("{}x{}", widths[b], heights[b]))
        .collect();
    // Windowed views shrink to 90% width, 80% height; every (bucket, state)
    // pair gets a distinct view-dimension label.
    let view_dims: Vec<(u32, u32)> = (0..8)
        .map(|i| {
            let b = i % 4;
            if i < 4 {
                (widths[b], heights[b])
            } else {
                (widths[b] * 9 / 10, heights[b] * 8 / 10)
            }
        })
        .collect();
    let view_labels: Vec<String> = view_dims.iter().map(|(w, h)| format!("{w}x{h}")).collect();

    let schema = AttributeSchema::new(vec![
        ("display-size".to_string(), buckets),
        (
            "window-flags".to_string(),
            vec!["maximized".to_string(), "windowed".to_string()],
        ),
        ("view-dims".to_string(), view_labels.clone()),
    ])?;

    let mut rng = SplitMix64::new(derive_seed(seed, TAG_SCENARIO, [0]));
    let bucket_probs = skewed_probs(&mut rng, 4);
    let flag_probs = [params.maximized_prob, 1.0 - params.maximized_prob];

    let mut entries = Vec::new();
    for b in 0..4u32 {
        for flag in 0..2u32 {
            let view = flag * 4 + b;
            let p = bucket_probs[b as usize] * flag_probs[flag as usize];
            entries.push((schema.assignment(vec![b, flag, view])?, p));
        }
    }
    let d = JointDistribution::tabular(schema, entries)?;
    let schema = d.schema();

    let width_of = |view: u32| view_dims[view as usize].0.to_string();
    let height_of = |view: u32| view_dims[view as usize].1.to_string();
    let width_domain = unique_labels(view_dims.iter().map(|(w, _)| w.to_string()));
    let height_domain = unique_labels(view_dims.iter().map(|(_, h)| h.to_string()));

    let mut functions = Vec::new();
    if params.include_direct {
        functions.push(FunctionDef::projection(
            schema,
            "Display.getMetrics",
            "display-size",
        )?);
    }
    functions.push(FunctionDef::table_from_fn(
        schema,
        "Activity.getWindow",
        &["window-flags"],
        vec!["window_handle".to_string()],
        |_| 0,
    )?);
    functions.push(FunctionDef::projection(
        schema,
        "Window.setFlags",
        "window-flags",
    )?);
    functions.push(FunctionDef::table_from_fn(
        schema,
        "Window.setContentView",
        &["window-flags"],
        vec!["view_handle".to_string()],
        |_| 0,
    )?);
    let wd = width_domain.clone();
    functions.push(FunctionDef::table_from_fn(
        schema,
        "View.getWidth",
        &["view-dims"],
        width_domain,
        |v| wd.iter().position(|l| *l == width_of(v[0])).unwrap() as u32,
    )?);
    let hd = height_domain.clone();
    functions.push(FunctionDef::table_from_fn(
        schema,
        "View.getHeight",
        &["view-dims"],
        height_domain,
        |v| hd.iter().position(|l| *l == height_of(v[0])).unwrap() as u32,
    )?);

    ProxyInstance::new(
        d,
        functions,
        "display-size",
        0.0,
        None,
        EstimatorConfig::exact(),
    )
}

/// Location proxies: region observables with per-signal coverage. An
/// informative signal reveals the region exactly; otherwise it reads
/// `none`. Coverage 1.0 makes a signal determining on its own; coverage 0
/// silences it entirely.
pub fn location(params: &LocationParams, seed: u64) -> Result<ProxyInstance> {
    if params.regions < 2 {
        return Err(Error::Input(
            "location scenario needs at least 2 regions".into(),
        ));
    }
    if params.coverage.iter().any(|c| !(0.0..=1.0).contains(c)) {
        return Err(Error::Input(format!(
            "coverage {:?} outside [0, 1]",
            params.coverage
        )));
    }
    let r = params.regions;
    let signals = ["wifi", "cell", "bt", "ip"];
    let signal_prefix = ["ap_r", "cell_r", "bt_r", "ip_r"];

    let mut attrs: Vec<(String, Vec<String>)> = Vec::new();
    attrs.push((
        "location".to_string(),
        (0..r).map(|i| format!("r{i}")).collect(),
    ));
    for (s, prefix) in signals.iter().zip(signal_prefix) {
        let mut domain: Vec<String> = (0..r).map(|i| format!("{prefix}{i}")).collect();
        domain.push("none".to_string());
        attrs.push((format!("{s}-list"), domain));
    }
    let schema = AttributeSchema::new(attrs)?;

    let mut rng = SplitMix64::new(derive_seed(seed, TAG_SCENARIO, [1]));
    let region_probs = skewed_probs(&mut rng, r);

    let mut entries = Vec::new();
    for region in 0..r as u32 {
        // Each of the four signals is independently informative or silent.
        for mask in 0..16u32 {
            let mut p = region_probs[region as usize];
            let mut values = vec![region];
            for (s, &coverage) in params.coverage.iter().enumerate() {
                let informative = mask >> s & 1 == 1;
                p *= if informative {
                    coverage
                } else {
                    1.0 - coverage
                };
                values.push(if informative { region } else { r as u32 });
            }
            if p > 0.0 {
                entries.push((schema.assignment(values)?, p));
            }
        }
    }
    let d = JointDistribution::tabular(schema, entries)?;
    let schema = d.schema();

    let mut functions = Vec::new();
    if params.include_direct {
        functions.push(FunctionDef::projection(
            schema,
            "LocationManager.getCurrentLocation",
            "location",
        )?);
    }
    functions.push(FunctionDef::projection(
        schema,
        "WifiManager.getScanResults",
        "wifi-list",
    )?);
    functions.push(FunctionDef::projection(
        schema,
        "TelephonyManager.getAllCellInfo",
        "cell-list",
    )?);
    functions.push(FunctionDef::projection(
        schema,
        "BluetoothAdapter.startDiscovery",
        "bt-list",
    )?);
    functions.push(FunctionDef::projection(
        schema,
        "NetworkInterface.getInterfaceAddresses",
        "ip-list",
    )?);

    let alpha = 0.25 * marginal_entropy(&d, 0)?;
    ProxyInstance::new(
        d,
        functions,
        "location",
        alpha,
        None,
        EstimatorConfig::exact(),
    )
}

/// User-identity proxies: a fingerprint of six platform attributes over a
/// small user population. Each user's fingerprint is a deterministic skewed
/// draw; the builder retries derived seeds until every four-valued
/// attribute splits users unevenly (so no singleton reaches half the
/// target entropy) and all fingerprints are distinct (so the full set
/// determines the user).
pub fn user_id(params: &UserIdParams, seed: u64) -> Result<ProxyInstance> {
    let n = params.num_users;
    if !(2..=512).contains(&n) {
        return Err(Error::Input(format!("num_users {n} outside [2, 512]")));
    }
    let fingerprint: [(&str, Vec<String>); 6] = [
        ("locale", str_domain(&["en_US", "en_GB", "fr_FR"])),
        (
            "carrier",
            str_domain(&["carrier_a", "carrier_b", "carrier_c"]),
        ),
        (
            "timezone",
            str_domain(&["utc-8", "utc-5", "utc+0", "utc+1"]),
        ),
        (
            "disk-space",
            str_domain(&["64gb", "128gb", "256gb", "512gb"]),
        ),
        (
            "model",
            str_domain(&["model_se", "model_12", "model_13", "model_15"]),
        ),
        ("os-version", str_domain(&["v16", "v17", "v18"])),
    ];

    let base_bits = (n as f64).log2();
    let maps = (0..u64::MAX)
        .map(|attempt| {
            let mut rng = SplitMix64::new(derive_seed(seed, TAG_SCENARIO, [2, attempt]));
            let maps: Vec<Vec<u32>> = fingerprint
                .iter()
                .map(|(_, domain)| {
                    (0..n)
                        .map(|_| rng.below(domain.len() as u64) as u32)
                        .collect()
                })
                .collect();
            maps
        })
        .find(|maps| {
            let distinct = {
                let mut tuples: Vec<Vec<u32>> = (0..n)
                    .map(|u| maps.iter().map(|m| m[u]).collect())
                    .collect();
                tuples.sort_unstable();
                tuples.windows(2).all(|w| w[0] != w[1])
            };
            let skewed = maps.iter().zip(&fingerprint).all(|(map, (_, domain))| {
                let mut counts = vec![0usize; domain.len()];
                for &v in map {
                    counts[v as usize] += 1;
                }
                let h: f64 = counts
                    .iter()
                    .filter(|&&c| c > 0)
                    .map(|&c| {
                        let p = c as f64 / n as f64;
                        -p * p.log2()
                    })
                    .sum();
                h < base_bits / 2.0 - 1e-9
            });
            distinct && skewed
        })
        .expect("a valid fingerprint assignment exists for some derived seed");

    let mut attrs: Vec<(String, Vec<String>)> = vec![(
        "user-id".to_string(),
        (0..n).map(|u| format!("u{u:02}")).collect(),
    )];
    for (name, domain) in &fingerprint {
        attrs.push((name.to_string(), domain.clone()));
    }
    let schema = AttributeSchema::new(attrs)?;

    let p = 1.0 / n as f64;
    let entries: Vec<(Assignment, f64)> = (0..n)
        .map(|u| {
            let mut values = vec![u as u32];
            values.extend(maps.iter().map(|m| m[u]));
            schema.assignment(values).map(|a| (a, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = JointDistribution::tabular(schema, entries)?;
    let schema = d.schema();

    let mut functions = Vec::new();
    if params.include_direct {
        functions.push(FunctionDef::projection(
            schema,
            "ASIdentifierManager.advertisingIdentifier",
            "user-id",
        )?);
    }
    for (attr, api) in [
        ("locale", "NSLocale.currentLocale.localeIdentifier"),
        ("carrier", "CTCarrier.carrierName"),
        ("timezone", "TimeZone.current"),
        ("disk-space", "FileManager.attributesOfFileSystem"),
        ("model", "UIDevice.localizedModel"),
        ("os-version", "UIDevice.systemVersion"),
    ] {
        functions.push(FunctionDef::projection(schema, api, attr)?);
    }

    let alpha = 0.5 * base_bits;
    ProxyInstance::new(
        d,
        functions,
        "user-id",
        alpha,
        None,
        EstimatorConfig::exact(),
    )
}

fn str_domain(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

fn unique_labels(labels: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    for l in labels {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Random probabilities bounded away from zero so no scenario state
/// vanishes from the support.
fn skewed_probs(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    let weights: Vec<f64> = (0..n).map(|_| 0.2 + rng.next_f64()).collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

fn marginal_entropy(d: &JointDistribution, attr: usize) -> Result<f64> {
    let support = d.enumerate_support()?;
    let marginal = support.marginal(attr, d.schema().attribute(attr).domain_size());
    Ok(marginal
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum())
}

/// Expected exact-solver outcome at one point of the alpha grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectation {
    /// Alpha as a fraction of the target's marginal entropy.
    pub alpha_fraction: f64,
    pub feasible: bool,
    /// Witness size when feasible.
    pub min_size: usize,
}

/// A catalog entry: builder name, default seed, and the frozen
/// feasible/infeasible pattern across the documented alpha grid, for the
/// default instance and for the variant with the direct read blocked.
/// The patterns were produced by this crate's exact solver, then frozen.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub default_seed: u64,
    pub expected: &'static [Expectation],
    pub expected_blocked: &'static [Expectation],
}

/// The documented alpha grid, as fractions of the target entropy.
pub const ALPHA_GRID: [f64; 4] = [0.0, 0.25, 0.5, 0.9];

/// With the direct read present it is always the minimum witness on its
/// own; every default-instance grid row is therefore (feasible, size 1).
const DIRECT_WINS: [Expectation; 4] = [
    Expectation {
        alpha_fraction: 0.0,
        feasible: true,
        min_size: 1,
    },
    Expectation {
        alpha_fraction: 0.25,
        feasible: true,
        min_size: 1,
    },
    Expectation {
        alpha_fraction: 0.5,
        feasible: true,
        min_size: 1,
    },
    Expectation {
        alpha_fraction: 0.9,
        feasible: true,
        min_size: 1,
    },
];

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "display_size",
            summary: "direct metrics read vs. the window/view dimension chain",
            default_seed: 101,
            expected: &DIRECT_WINS,
            // Exact determination needs width and height; half the target
            // entropy is already reachable from the width reading alone.
            expected_blocked: &[
                Expectation {
                    alpha_fraction: 0.0,
                    feasible: true,
                    min_size: 2,
                },
                Expectation {
                    alpha_fraction: 0.25,
                    feasible: true,
                    min_size: 2,
                },
                Expectation {
                    alpha_fraction: 0.5,
                    feasible: true,
                    min_size: 1,
                },
                Expectation {
                    alpha_fraction: 0.9,
                    feasible: true,
                    min_size: 1,
                },
            ],
        },
        CatalogEntry {
            name: "location",
            summary: "radio/network observables with per-signal coverage",
            default_seed: 102,
            expected: &DIRECT_WINS,
            // No observable bundle reaches zero uncertainty under partial
            // coverage, but a single high-coverage signal clears 0.25 H.
            expected_blocked: &[
                Expectation {
                    alpha_fraction: 0.0,
                    feasible: false,
                    min_size: 0,
                },
                Expectation {
                    alpha_fraction: 0.25,
                    feasible: true,
                    min_size: 1,
                },
                Expectation {
                    alpha_fraction: 0.5,
                    feasible: true,
                    min_size: 1,
                },
                Expectation {
                    alpha_fraction: 0.9,
                    feasible: true,
                    min_size: 1,
                },
            ],
        },
        CatalogEntry {
            name: "user_id",
            summary: "device fingerprint over a small user population",
            default_seed: 103,
            expected: &DIRECT_WINS,
            // The fingerprint needs four attributes for exact identification
            // and still needs two at half the target entropy.
            expected_blocked: &[
                Expectation {
                    alpha_fraction: 0.0,
                    feasible: true,
                    min_size: 4,
                },
                Expectation {
                    alpha_fraction: 0.25,
                    feasible: true,
                    min_size: 2,
                },
                Expectation {
                    alpha_fraction: 0.5,
                    feasible: true,
                    min_size: 2,
                },
                Expectation {
                    alpha_fraction: 0.9,
                    feasible: true,
                    min_size: 1,
                },
            ],
        },
    ]
}

/// Default seed for a named scenario, as recorded in the catalog.
pub fn default_seed(name: &str) -> Result<u64> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.default_seed)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}
