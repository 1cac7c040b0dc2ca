"""
seqcube launcher (main.py)
--------------------------
Runs the command-line surface without installing the package:
    python main.py lc --bits 11110000
Settings come from the environment or a .env file next to this script.
"""

from dotenv import load_dotenv

from src.cli import cli

if __name__ == "__main__":
    load_dotenv()
    cli()
