import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'flowsentry.settings')
django.setup()
