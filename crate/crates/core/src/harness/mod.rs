//! Catalogs, verification campaigns, and the on-disk artifact cache.

mod cache;
mod campaign;
mod catalog;

pub use cache::{Cache, CacheKey, CACHE_ENV};
pub use campaign::{
    run_campaign, CampaignConfig, CampaignReport, EntryRecord, LoewyFlags, Outcome, PairRecord, Summary, Timings,
    ENTRY_CHECKS, PAIR_CHECKS, SCHEMA_VERSION,
};
pub use catalog::{
    bundled_catalog, generate_catalog, ingest_catalog, parse_catalog, Catalog, CatalogEntry, Expected,
    GenerateMode, PairSpec,
};
