import os


class Config:
    config = {
        "n_workers": os.cpu_count(),
        "max_linext_size": 20,
        "max_hull_dim": 5,
        "max_hull_points": 256,
        "max_enum_size": 4,
        "max_region_dim": 4,
    }


def get(key):
    return Config.config[key]


def set(key, value):
    if key not in Config.config:
        raise KeyError(f"unknown configuration key '{key}'")
    Config.config[key] = value
