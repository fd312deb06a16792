import os

os.environ.setdefault("CGC_CACHE", "/tmp/cgc")
