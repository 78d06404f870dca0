import sys

from dotenv import load_dotenv

from src.main import main

# Load environment variables
load_dotenv()

if __name__ == '__main__':
    sys.exit(main())
