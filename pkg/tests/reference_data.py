"""Previously reported benchmark results for the four resource/job pairs.

Mean makespans over 100 runs as originally reported, plus the published
relative-performance table derived from them.  The relative table is
reproducible as arithmetic over the means (the absolute means themselves
depend on unpublished datasets and are not reproduction targets).
"""

REPORTED_MEAN_MAKESPANS = {
    "GA": {"(3,13)": 47.1167, "(5,100)": 85.7431, "(8,60)": 42.9270, "(10,50)": 38.0428},
    "SA": {"(3,13)": 46.6000, "(5,100)": 90.7338, "(8,60)": 55.4594, "(10,50)": 41.7889},
    "Fuzzy PSO": {"(3,13)": 46.2667, "(5,100)": 84.0544, "(8,60)": 41.9489, "(10,50)": 37.6668},
    "DE": {"(3,13)": 46.0500, "(5,100)": 86.0138, "(8,60)": 43.0413, "(10,50)": 37.5748},
    "Fuzzy DE": {"(3,13)": 46.0166, "(5,100)": 85.5431, "(8,60)": 41.7580, "(10,50)": 36.0588},
}

REPORTED_RELATIVE = {
    "GA": {"(3,13)": 1.10003, "(5,100)": 0.19994, "(8,60)": 1.16895, "(10,50)": 1.98692},
    "SA": {"(3,13)": 0.58333, "(5,100)": 5.19064, "(8,60)": 13.70135, "(10,50)": 5.73302},
    "Fuzzy PSO": {"(3,13)": 0.25003, "(5,100)": -1.48876, "(8,60)": 0.19085, "(10,50)": 1.61092},
    "DE": {"(3,13)": 0.03333, "(5,100)": 0.47064, "(8,60)": 1.28325, "(10,50)": 1.51892},
}

REPORTED_RELATIVE_AVERAGES = {
    "GA": 1.11396,
    "SA": 6.302085,
    "Fuzzy PSO": 0.14076,
    "DE": 0.826535,
}
