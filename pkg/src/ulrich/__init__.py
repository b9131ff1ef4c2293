"""Construction and certification of rank-2 special Ulrich bundles on double planes."""
