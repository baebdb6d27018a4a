// placeholder; populated with the config_io module
